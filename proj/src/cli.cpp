#include "starq/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "starq/codes.hpp"
#include "starq/css.hpp"
#include "starq/embed.hpp"
#include "starq/errors.hpp"
#include "starq/msd.hpp"
#include "starq/qubitize.hpp"
#include "starq/transversal.hpp"

namespace starq {
namespace cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitPass = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

uint64_t fnv1a(const std::string& data) {
    uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string hex64(uint64_t v) {
    std::ostringstream out;
    out << "0x" << std::hex << v;
    return out.str();
}

/// Shared report scaffolding: command echo, input digests, seed, timings.
struct Report {
    json body;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    bool with_timings = true;

    explicit Report(const std::vector<std::string>& args) {
        std::string cmd;
        for (const auto& a : args) {
            if (!cmd.empty()) cmd += " ";
            cmd += a;
        }
        body["command"] = cmd;
        body["inputs"] = json::object();
    }
    void add_input(const std::string& path, const std::string& contents) {
        body["inputs"][path] = hex64(fnv1a(contents));
    }
    void emit(std::ostream& out) {
        if (with_timings)
            body["timings_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
        out << body.dump(2) << "\n";
    }
};

LinearCode load_code(const std::string& path, Report& report) {
    std::string contents = read_file(path);
    report.add_input(path, contents);
    std::istringstream in(contents);
    return read_code(in);
}

void save_mat(const fs::path& path, const Mat& m) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path.string());
    write_mat(out, m);
}

Mat load_mat(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    return read_mat(in);
}

VerifyMode parse_mode(const std::string& text) {
    if (text == "exhaustive") return VerifyMode::exhaustive();
    if (text.rfind("sampled:", 0) == 0) {
        std::string rest = text.substr(8);
        size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--mode", "sampled mode needs sampled:<trials>:<seed>");
        uint64_t trials = std::stoull(rest.substr(0, colon));
        uint64_t seed = std::stoull(rest.substr(colon + 1));
        return VerifyMode::sampled(trials, seed);
    }
    throw CLI::ValidationError("--mode", "expected exhaustive or sampled:<trials>:<seed>");
}

json schedule_to_json(const CczSchedule& schedule) {
    json triples = json::array();
    json provenance = json::array();
    for (const auto& t : schedule.triples) {
        triples.push_back({t.qubits[0], t.qubits[1], t.qubits[2]});
        provenance.push_back({{"register", t.reg}, {"slot", t.slot}});
    }
    std::string pmask;
    for (size_t i = 0; i < schedule.p_mask.size(); i += 4) {
        int nibble = 0;
        for (size_t b = 0; b < 4 && i + b < schedule.p_mask.size(); ++b)
            nibble |= schedule.p_mask[i + b] << b;
        pmask += "0123456789abcdef"[nibble];
    }
    return json{{"N3", schedule.n3},
                {"K3", schedule.k3},
                {"r", schedule.r},
                {"layout", "qubit_index = register * r + slot"},
                {"p_mask_lsb_hex", pmask},
                {"triples", triples},
                {"provenance", provenance}};
}

CczSchedule schedule_from_json(const json& j) {
    CczSchedule schedule;
    schedule.n3 = j.at("N3").get<size_t>();
    schedule.k3 = j.at("K3").get<size_t>();
    schedule.r = j.at("r").get<size_t>();
    const auto& triples = j.at("triples");
    const auto& prov = j.at("provenance");
    for (size_t i = 0; i < triples.size(); ++i) {
        CczSchedule::Triple t;
        t.qubits = {triples[i][0].get<size_t>(), triples[i][1].get<size_t>(),
                    triples[i][2].get<size_t>()};
        t.reg = prov[i].at("register").get<size_t>();
        t.slot = prov[i].at("slot").get<size_t>();
        schedule.triples.push_back(t);
    }
    return schedule;
}

PhaseGateSpec load_gate(const std::string& text, const Field& f) {
    if (text == "ccz") return ccz_spec(f);
    std::string contents = read_file(text);
    json j = json::parse(contents);
    std::vector<Monomial> monomials;
    for (const auto& m : j.at("monomials")) {
        Monomial mono;
        mono.ex = m.at("e")[0].get<int>();
        mono.ey = m.at("e")[1].get<int>();
        mono.ez = m.at("e")[2].get<int>();
        mono.coeff = static_cast<uint32_t>(std::stoul(m.at("coeff").get<std::string>(), nullptr, 16));
        monomials.push_back(mono);
    }
    uint32_t mask = static_cast<uint32_t>(std::stoul(j.at("f_mask").get<std::string>(), nullptr, 16));
    std::string basis = j.value("basis", "polynomial");
    FieldBasis fb = basis == "selfdual" ? find_self_dual_basis(f).basis : FieldBasis::polynomial(f);
    return PhaseGateSpec(f, std::move(monomials), mask, std::move(fb));
}

json witness_to_json(const TransversalWitness& w) {
    return json{{"u", w.u},       {"v", w.v},   {"w", w.w},          {"h", w.h},
                {"h_prime", w.h1}, {"h_dprime", w.h2}, {"physical", w.physical},
                {"logical", w.logical}};
}

int cmd_field_info(int m, Report& report, std::ostream& out) {
    const Field& f = Field::make(m);
    report.body["field"] = {{"m", f.degree()},
                            {"q", f.q()},
                            {"poly", hex64(f.modulus())},
                            {"spec", f.spec_string()}};
    uint32_t trace_ones = 0;
    for (uint32_t a = 0; a < f.q(); ++a) trace_ones += f.trace(a);
    report.body["field"]["trace_ones"] = trace_ones;
    report.emit(out);
    return kExitPass;
}

json code_record(const LinearCode& code, uint64_t budget) {
    json rec;
    rec["label"] = code.label;
    rec["n"] = code.n;
    rec["k"] = code.k;
    WeightResult d = min_distance(code, budget);
    if (d.exact()) {
        rec["d"] = d.weight;
        rec["d_is_exact"] = true;
    } else {
        rec["d"] = nullptr;
        rec["d_is_exact"] = false;
    }
    MultPropertyReport mp = check_mult_property(code, 2);
    if (!mp.routes_agree()) throw std::logic_error("multiplication-property routes disagree");
    rec["mult_property"] = mp.holds();
    rec["all_ones"] = contains_all_ones(code);
    return rec;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"star-product CSS code toolkit"};
    app.require_subcommand(1);
    bool no_timings = false;
    app.add_flag("--no-timings", no_timings, "omit the timings field from reports");

    // field info
    auto* field_cmd = app.add_subcommand("field", "finite field utilities");
    auto* field_info = field_cmd->add_subcommand("info", "print the canonical field spec");
    int fi_m = 1;
    field_info->add_option("--m", fi_m, "extension degree")->required();

    // code build|check|distance
    auto* code_cmd = app.add_subcommand("code", "classical code operations");
    auto* code_build = code_cmd->add_subcommand("build", "construct a code family instance");
    std::string cb_family, cb_out;
    int cb_m = 4;
    size_t cb_k = 1, cb_n = 4;
    uint32_t cb_q0 = 2, cb_s = 2;
    code_build->add_option("--family", cb_family, "rs | hermitian | repetition")->required();
    code_build->add_option("--m", cb_m, "field degree (rs, repetition)");
    code_build->add_option("--k", cb_k, "dimension (rs)");
    code_build->add_option("--n", cb_n, "length (repetition)");
    code_build->add_option("--q0", cb_q0, "Hermitian base size (2 or 4)");
    code_build->add_option("--s", cb_s, "Hermitian divisor degree");
    code_build->add_option("--out", cb_out, "output file (stdout if omitted)");

    auto* code_check = code_cmd->add_subcommand("check", "multiplication property and all-ones");
    std::string cc_in;
    uint64_t cc_budget = kDefaultDistanceCap;
    code_check->add_option("--in", cc_in, "code file")->required();
    code_check->add_option("--budget", cc_budget, "distance enumeration budget");

    auto* code_distance = code_cmd->add_subcommand("distance", "exact minimum distance");
    std::string cd_in;
    uint64_t cd_budget = kDefaultDistanceCap;
    code_distance->add_option("--in", cd_in, "code file")->required();
    code_distance->add_option("--budget", cd_budget, "enumeration budget");

    // css build
    auto* css_cmd = app.add_subcommand("css", "qudit CSS construction");
    auto* css_build = css_cmd->add_subcommand("build", "pivot a code into a CSS code");
    std::string csb_code, csb_out;
    size_t csb_K = 1;
    uint64_t csb_budget = kDefaultDistanceCap;
    css_build->add_option("--code", csb_code, "code file")->required();
    css_build->add_option("--K", csb_K, "logical qudits")->required();
    css_build->add_option("--out", csb_out, "output directory")->required();
    css_build->add_option("--budget", csb_budget, "distance enumeration budget");

    // transversal verify
    auto* trans_cmd = app.add_subcommand("transversal", "phase-gate transversality checks");
    auto* trans_verify = trans_cmd->add_subcommand("verify", "physical vs logical phase");
    std::string tv_css, tv_gate = "ccz", tv_mode = "exhaustive";
    trans_verify->add_option("--css", tv_css, "css directory from `css build`")->required();
    trans_verify->add_option("--gate", tv_gate, "ccz or a gate JSON file");
    trans_verify->add_option("--mode", tv_mode, "exhaustive | sampled:<trials>:<seed>");

    // qubitize run
    auto* qub_cmd = app.add_subcommand("qubitize", "qudit-to-qubit pipeline");
    auto* qub_run = qub_cmd->add_subcommand("run", "run the three-step pipeline");
    std::string qr_code, qr_rmfe = "trivial", qr_out, qr_verify = "none";
    size_t qr_K = 1;
    uint64_t qr_budget = kDefaultDistanceCap;
    qub_run->add_option("--code", qr_code, "code file")->required();
    qub_run->add_option("--K", qr_K, "logical qudits")->required();
    qub_run->add_option("--rmfe", qr_rmfe, "trivial | search:<s>[:<seed>]");
    qub_run->add_option("--out", qr_out, "output directory")->required();
    qub_run->add_option("--verify", qr_verify, "none | exhaustive | sampled:<trials>:<seed>");
    qub_run->add_option("--budget", qr_budget, "distance enumeration budget");

    // schedule export
    auto* sched_cmd = app.add_subcommand("schedule", "CCZ schedule utilities");
    auto* sched_export = sched_cmd->add_subcommand("export", "re-emit a pipeline schedule");
    std::string se_pipeline, se_format = "json";
    sched_export->add_option("--pipeline", se_pipeline, "directory from `qubitize run`")->required();
    sched_export->add_option("--format", se_format, "json | text");

    // msd estimate|simulate
    auto* msd_cmd = app.add_subcommand("msd", "magic state distillation tools");
    auto* msd_estimate = msd_cmd->add_subcommand("estimate", "constant-overhead plan");
    double me_rate = 0.25, me_delta = 0.25, me_c = 1.0, me_eps = 1e-9;
    msd_estimate->add_option("--rate", me_rate, "family rate rho")->required();
    msd_estimate->add_option("--delta", me_delta, "family relative distance")->required();
    msd_estimate->add_option("--c", me_c, "suppression constant")->required();
    msd_estimate->add_option("--eps", me_eps, "target output error rate")->required();

    auto* msd_simulate = msd_cmd->add_subcommand("simulate", "Monte Carlo of one round");
    std::string ms_pipeline;
    double ms_p = 0.01;
    uint64_t ms_trials = 10000, ms_seed = 0;
    msd_simulate->add_option("--pipeline", ms_pipeline, "directory from `qubitize run`")->required();
    msd_simulate->add_option("--p", ms_p, "physical error rate")->required();
    msd_simulate->add_option("--trials", ms_trials, "number of trials")->required();
    msd_simulate->add_option("--seed", ms_seed, "PRNG seed")->required();

    std::vector<std::string> argv_like = args;
    try {
        std::vector<const char*> argv;
        argv.push_back("starq");
        for (const auto& a : argv_like) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return kExitPass;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    Report report(args);
    report.with_timings = !no_timings;

    try {
        if (field_info->parsed()) return cmd_field_info(fi_m, report, out);

        if (code_build->parsed()) {
            LinearCode code = [&] {
                if (cb_family == "rs") return rs_code(Field::make(cb_m), cb_k);
                if (cb_family == "repetition") {
                    Mat gen(Field::make(cb_m), 1, cb_n);
                    for (size_t j = 0; j < cb_n; ++j) gen.set(0, j, 1);
                    return make_code(std::move(gen), "repetition n=" + std::to_string(cb_n));
                }
                if (cb_family == "hermitian") return hermitian_code(cb_q0, cb_s);
                throw CLI::ValidationError("--family", "expected rs, hermitian, or repetition");
            }();
            report.body["code"] = code_record(code, kDefaultDistanceCap);
            if (cb_family == "hermitian") {
                AgParams bounds = ag_param_bounds(code.n, hermitian_genus(cb_q0), cb_s);
                report.body["code"]["d_bound"] = bounds.d_bound;
                report.body["code"]["dual_d_bound"] = bounds.dual_d_bound;
                // One-point duality C_s^perp = C_{n+2g-2-s}, verified rather
                // than assumed whenever the partner degree is in range.
                uint32_t partner = code.n + 2 * hermitian_genus(cb_q0) - 2 - cb_s;
                if (partner < code.n) {
                    LinearCode expect = hermitian_code(cb_q0, partner);
                    report.body["code"]["checks"] = {
                        {"duality", same_rowspace(dual(code).gen, expect.gen)}};
                }
            } else if (cb_family == "rs") {
                report.body["code"]["d_bound"] = code.n - code.k + 1;
                if (code.k < code.n)
                    report.body["code"]["checks"] = {
                        {"duality",
                         same_rowspace(dual(code).gen, rs_code(code.field(), code.n - code.k).gen)}};
            }
            if (cb_out.empty()) {
                std::ostringstream text;
                write_code(text, code);
                report.body["code_text"] = text.str();
            } else {
                std::ofstream f(cb_out);
                if (!f) throw std::invalid_argument("cannot write " + cb_out);
                write_code(f, code);
                report.body["out"] = cb_out;
            }
            report.emit(out);
            return kExitPass;
        }

        if (code_check->parsed()) {
            LinearCode code = load_code(cc_in, report);
            report.body["code"] = code_record(code, cc_budget);
            report.emit(out);
            return kExitPass;
        }

        if (code_distance->parsed()) {
            LinearCode code = load_code(cd_in, report);
            WeightResult d = min_distance(code, cd_budget);
            if (!d.exact()) throw BudgetExceeded("distance enumeration over budget");
            report.body["code"] = code_record(code, cd_budget);
            report.body["code"]["enumerated"] = d.enumerated;
            report.emit(out);
            return kExitPass;
        }

        if (css_build->parsed()) {
            LinearCode code = load_code(csb_code, report);
            QuditCssCode q = build_css(code, csb_K, csb_budget);
            TripleConditionReport identities = check_triple_conditions(q.h1, q.h0);
            fs::create_directories(csb_out);
            save_mat(fs::path(csb_out) / "h1.mat", q.h1);
            save_mat(fs::path(csb_out) / "h0.mat", q.h0);
            json css;
            css["N"] = q.N;
            css["K"] = q.K;
            css["source"] = q.source;
            css["dx_bound"] = q.dx_bound ? json(*q.dx_bound) : json(nullptr);
            css["dz"] = q.dz.exact() ? json(q.dz.weight) : json(nullptr);
            css["checks"] = {{"eq3", identities.eq3.empty()},
                             {"eq4", identities.eq4.empty()},
                             {"eq5", identities.eq5.empty()}};
            report.body["css"] = css;
            {
                std::ofstream f(fs::path(csb_out) / "css.json");
                f << json(css).dump(2) << "\n";
            }
            report.emit(out);
            bool all = identities.ok();
            return all ? kExitPass : kExitCounterexample;
        }

        if (trans_verify->parsed()) {
            Mat h1 = load_mat(fs::path(tv_css) / "h1.mat");
            Mat h0 = load_mat(fs::path(tv_css) / "h0.mat");
            report.add_input(tv_css + "/h1.mat", [&] { std::ostringstream s; write_mat(s, h1); return s.str(); }());
            report.add_input(tv_css + "/h0.mat", [&] { std::ostringstream s; write_mat(s, h0); return s.str(); }());
            QuditCssCode q;
            q.N = h1.cols();
            q.K = h1.rows();
            q.h1 = h1;
            q.h0 = h0;
            q.z_stab = nullspace(vstack(h1, h0));
            PhaseGateSpec gate = load_gate(tv_gate, h1.field());
            TransversalResult result = verify_transversal(q, gate, parse_mode(tv_mode));
            report.body["transversal"] = {{"checks", result.checks}, {"pass", result.pass}};
            if (result.witness) report.body["transversal"]["witness"] = witness_to_json(*result.witness);
            report.emit(out);
            return result.pass ? kExitPass : kExitCounterexample;
        }

        if (qub_run->parsed()) {
            LinearCode code = load_code(qr_code, report);
            RmfeMode rmfe_mode = RmfeMode::trivial();
            if (qr_rmfe != "trivial") {
                if (qr_rmfe.rfind("search:", 0) != 0)
                    throw CLI::ValidationError("--rmfe", "expected trivial or search:<s>[:<seed>]");
                std::string rest = qr_rmfe.substr(7);
                size_t colon = rest.find(':');
                int s = std::stoi(rest.substr(0, colon == std::string::npos ? rest.size() : colon));
                uint64_t seed = colon == std::string::npos ? 0 : std::stoull(rest.substr(colon + 1));
                rmfe_mode = RmfeMode::search(s, seed);
            }
            PipelineResult result = run_pipeline(code, qr_K, rmfe_mode, qr_budget);
            TripleConditionReport identities = check_triple_conditions(result.q0.h1, result.q0.h0);

            fs::create_directories(qr_out);
            save_mat(fs::path(qr_out) / "x_stab.mat", result.q3.x_stab);
            save_mat(fs::path(qr_out) / "z_stab.mat", result.q3.z_stab);
            save_mat(fs::path(qr_out) / "logical_x.mat", result.q3.logical_x);
            save_mat(fs::path(qr_out) / "logical_z.mat", result.q3.logical_z);
            {
                std::ofstream f(fs::path(qr_out) / "schedule.json");
                f << schedule_to_json(result.schedule).dump(2) << "\n";
            }

            json rj;
            rj["params"] = {{"N0", result.params.n0}, {"K0", result.params.k0},
                            {"m", result.params.m},   {"s", result.params.s},
                            {"r", result.params.r},   {"N3", result.params.n3},
                            {"K3", result.params.k3}};
            rj["q0"] = {{"N", result.q0.N},
                        {"K", result.q0.K},
                        {"dx_bound", result.q0.dx_bound ? json(*result.q0.dx_bound) : json(nullptr)},
                        {"dz", result.q0.dz.exact() ? json(result.q0.dz.weight) : json(nullptr)}};
            rj["q1"] = {{"N", result.q1.N}, {"K", result.q1.K}};
            rj["q2"] = {{"N", result.q2.N}, {"K", result.q2.K}};
            rj["q3"] = {{"N", result.q3.N}, {"K", result.q3.K}};
            rj["schedule_triples"] = result.schedule.triples.size();
            rj["checks"] = {{"eq3", identities.eq3.empty()},
                            {"eq4", identities.eq4.empty()},
                            {"eq5", identities.eq5.empty()}};
            rj["embeddings"] = {{"rmfe", json::parse(rmfe_to_json(result.rmfe))},
                                {"mfe", json::parse(mfe_to_json(result.mfe))}};
            {
                json sdb_elems = json::array();
                for (uint32_t e : result.sdb.basis.elements()) sdb_elems.push_back(hex64(e));
                rj["embeddings"]["self_dual_basis"] = sdb_elems;
            }

            int exit_code = kExitPass;
            if (qr_verify != "none") {
                PipelineVerifyResult pv = verify_pipeline(result, parse_mode(qr_verify));
                rj["checks"]["pipeline"] = pv.pass;
                rj["pipeline_checks"] = pv.checks;
                if (!pv.pass) exit_code = kExitCounterexample;
            }
            {
                std::ofstream f(fs::path(qr_out) / "report.json");
                f << rj.dump(2) << "\n";
            }
            report.body["report"] = rj;
            report.body["out"] = qr_out;
            report.emit(out);
            return identities.ok() ? exit_code : kExitCounterexample;
        }

        if (sched_export->parsed()) {
            std::string contents = read_file((fs::path(se_pipeline) / "schedule.json").string());
            report.add_input(se_pipeline + "/schedule.json", contents);
            json j = json::parse(contents);
            if (se_format == "json") {
                out << j.dump(2) << "\n";
            } else if (se_format == "text") {
                CczSchedule schedule = schedule_from_json(j);
                for (const auto& t : schedule.triples)
                    out << t.qubits[0] << " " << t.qubits[1] << " " << t.qubits[2] << "\n";
            } else {
                throw CLI::ValidationError("--format", "expected json or text");
            }
            return kExitPass;
        }

        if (msd_estimate->parsed()) {
            msd::Plan plan = msd::estimate(msd::Family{me_rate, me_delta, me_c}, me_eps);
            report.body["plan"] = {{"N", plan.n},
                                   {"K", plan.k},
                                   {"D", plan.d},
                                   {"eps", plan.target_eps},
                                   {"blocks", plan.blocks},
                                   {"noisy_states", plan.noisy_states},
                                   {"expected_yield", plan.expected_yield},
                                   {"input_noise_bound", plan.input_noise_bound},
                                   {"overhead", plan.overhead}};
            report.emit(out);
            return kExitPass;
        }

        if (msd_simulate->parsed()) {
            QubitCssCode code;
            code.x_stab = load_mat(fs::path(ms_pipeline) / "x_stab.mat");
            code.z_stab = load_mat(fs::path(ms_pipeline) / "z_stab.mat");
            code.logical_x = load_mat(fs::path(ms_pipeline) / "logical_x.mat");
            code.logical_z = load_mat(fs::path(ms_pipeline) / "logical_z.mat");
            code.N = code.logical_x.cols();
            code.K = code.logical_x.rows();
            check_qubit_css(code);
            msd::SimResult sim = msd::simulate(code, ms_p, ms_trials, ms_seed);
            report.body["simulate"] = {{"p", ms_p},
                                       {"trials", sim.trials},
                                       {"seed", ms_seed},
                                       {"failures", sim.failures},
                                       {"logical_error_rate", sim.rate},
                                       {"wilson", {sim.wilson_low, sim.wilson_high}}};
            report.emit(out);
            return kExitPass;
        }
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    err << "usage error: no subcommand\n";
    return kExitUsage;
}

} // namespace cli
} // namespace starq
