#include "starq/embed.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include <json.hpp>

#include "starq/prng.hpp"

namespace starq {

SelfDualBasis find_self_dual_basis(const Field& f) {
    const int m = f.degree();
    auto pairing = [&](uint32_t a, uint32_t b) { return f.trace(f.mul(a, b)); };

    // Congruence reduction of the trace form, working directly on field
    // elements. Split off orthonormal vectors while they exist; leftover
    // hyperbolic pairs are merged with an orthonormal vector u via
    // {u+p, u+q, u+p+q}, which is again orthonormal.
    std::vector<uint32_t> remaining;
    for (int i = 0; i < m; ++i) remaining.push_back(1u << i);
    std::vector<uint32_t> ortho;
    std::deque<std::pair<uint32_t, uint32_t>> pairs;

    while (!remaining.empty()) {
        size_t diag = remaining.size();
        for (size_t i = 0; i < remaining.size(); ++i)
            if (pairing(remaining[i], remaining[i]) == 1) { diag = i; break; }
        if (diag < remaining.size()) {
            uint32_t u = remaining[diag];
            remaining.erase(remaining.begin() + diag);
            for (uint32_t& w : remaining)
                if (pairing(u, w) == 1) w = f.add(w, u);
            ortho.push_back(u);
        } else {
            size_t pi = remaining.size(), pj = remaining.size();
            for (size_t i = 0; i < remaining.size() && pi == remaining.size(); ++i)
                for (size_t j = i + 1; j < remaining.size(); ++j)
                    if (pairing(remaining[i], remaining[j]) == 1) { pi = i; pj = j; break; }
            if (pi == remaining.size())
                throw std::logic_error("find_self_dual_basis: trace form is degenerate");
            uint32_t p = remaining[pi], q = remaining[pj];
            remaining.erase(remaining.begin() + pj);
            remaining.erase(remaining.begin() + pi);
            for (uint32_t& w : remaining) {
                uint32_t adjust = 0;
                if (pairing(w, q) == 1) adjust ^= p;
                if (pairing(w, p) == 1) adjust ^= q;
                w = f.add(w, adjust);
            }
            pairs.emplace_back(p, q);
        }
    }
    while (!pairs.empty()) {
        if (ortho.empty())
            throw std::logic_error("find_self_dual_basis: fully alternating residual form");
        uint32_t u = ortho.back();
        ortho.pop_back();
        auto [p, q] = pairs.front();
        pairs.pop_front();
        ortho.push_back(f.add(u, p));
        ortho.push_back(f.add(u, q));
        ortho.push_back(f.add(f.add(u, p), q));
    }

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (pairing(ortho[i], ortho[j]) != (i == j ? 1u : 0u))
                throw std::logic_error("find_self_dual_basis: Gram matrix is not the identity");
    return SelfDualBasis{FieldBasis(f, std::move(ortho), BasisKind::self_dual)};
}

std::vector<uint32_t> expand_vector(const FieldBasis& basis, std::span<const uint32_t> v) {
    const int m = basis.field().degree();
    std::vector<uint32_t> bits(v.size() * m);
    for (size_t c = 0; c < v.size(); ++c) {
        uint32_t coords = basis.expand(v[c]);
        for (int j = 0; j < m; ++j) bits[c * m + j] = coords >> j & 1;
    }
    return bits;
}

LinearCode expand_code(const LinearCode& c, const FieldBasis& basis) {
    if (!basis.field().same(c.field())) throw std::invalid_argument("expand_code: basis field mismatch");
    const Field& f = c.field();
    const Field& gf2 = Field::make(1);
    const int m = f.degree();

    std::vector<std::vector<uint32_t>> rows;
    for (size_t i = 0; i < c.k; ++i)
        for (const uint32_t alpha : basis.elements()) {
            std::vector<uint32_t> scaled(c.n);
            for (size_t col = 0; col < c.n; ++col) scaled[col] = f.mul(alpha, c.gen.at(i, col));
            rows.push_back(expand_vector(basis, scaled));
        }
    if (rows.empty()) {
        LinearCode z{c.n * m, 0, Mat(gf2, 0, c.n * m), "B(" + c.label + ")"};
        return z;
    }
    Mat gen = Mat::from_rows(gf2, rows);
    RrefResult rr = rref(gen);
    if (rr.rank != c.k * m)
        throw std::logic_error("expand_code: expansion lost rank on " + c.label);
    Mat basis_rows(gf2, rr.rank, gen.cols());
    for (size_t i = 0; i < rr.rank; ++i)
        for (size_t j = 0; j < gen.cols(); ++j) basis_rows.set(i, j, rr.r.at(i, j));
    LinearCode out{c.n * m, rr.rank, std::move(basis_rows), "B(" + c.label + ")"};
    return out;
}

void check_qubit_css(const QubitCssCode& code) {
    if (code.x_stab.rows() && code.z_stab.rows()) {
        Mat prod = mat_mul(code.x_stab, transpose(code.z_stab));
        if (!prod.is_zero()) throw std::logic_error("qubit CSS: X and Z stabilizers do not commute");
    }
    size_t rx = code.x_stab.rows() ? rank(code.x_stab) : 0;
    size_t rz = code.z_stab.rows() ? rank(code.z_stab) : 0;
    if (rx != code.x_stab.rows() || rz != code.z_stab.rows())
        throw std::logic_error("qubit CSS: stabilizer generators are dependent");
    if (code.N != code.K + rx + rz) throw std::logic_error("qubit CSS: rank accounting is off");
    // Logical pairing must be the identity; logicals must commute with stabilizers.
    Mat pairing = mat_mul(code.logical_z, transpose(code.logical_x));
    if (!(pairing == Mat::identity(Field::make(1), code.K)))
        throw std::logic_error("qubit CSS: logical pairing is not the identity");
    if (code.x_stab.rows() && !mat_mul(code.x_stab, transpose(code.logical_z)).is_zero())
        throw std::logic_error("qubit CSS: logical Z fails to commute with X stabilizers");
    if (code.z_stab.rows() && !mat_mul(code.z_stab, transpose(code.logical_x)).is_zero())
        throw std::logic_error("qubit CSS: logical X fails to commute with Z stabilizers");
}

QubitCssCode qubitize_css(const QuditCssCode& q, const SelfDualBasis& sdb) {
    if (!sdb.field().same(q.field())) throw std::invalid_argument("qubitize_css: basis field mismatch");
    const Field& f = q.field();
    const Field& gf2 = Field::make(1);
    const int m = f.degree();

    auto expand_block = [&](const Mat& block) {
        std::vector<std::vector<uint32_t>> rows;
        for (size_t i = 0; i < block.rows(); ++i)
            for (uint32_t alpha : sdb.basis.elements()) {
                std::vector<uint32_t> scaled(block.cols());
                for (size_t c = 0; c < block.cols(); ++c) scaled[c] = f.mul(alpha, block.at(i, c));
                rows.push_back(expand_vector(sdb.basis, scaled));
            }
        if (rows.empty()) return Mat(gf2, 0, block.cols() * m);
        return Mat::from_rows(gf2, rows);
    };

    QubitCssCode out;
    out.N = q.N * m;
    out.K = q.K * m;
    out.x_stab = expand_block(q.h0);
    out.z_stab = expand_block(q.z_stab);
    LogicalPaulis lp = logical_paulis(q);
    out.logical_x = expand_block(lp.x_reps);
    out.logical_z = expand_block(lp.z_reps);
    out.lineage = "step1(" + q.source + ")";
    check_qubit_css(out);
    return out;
}

Mfe mfe3(const Field& f) {
    const int m = f.degree();
    const size_t r = static_cast<size_t>(m) * m * m;
    const Field& gf2 = Field::make(1);
    Mfe mfe;
    mfe.m = m;
    mfe.r = r;
    mfe.sigma = Mat(gf2, r, m);
    mfe.psi = Mat(gf2, m, r);
    mfe.pi2.resize(r);
    mfe.pi3.resize(r);

    auto slot = [m](int i, int j, int k) {
        return static_cast<size_t>(i) * m * m + static_cast<size_t>(j) * m + k;
    };
    const uint32_t alpha = m == 1 ? 1u : 2u; // the basis generator x
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                size_t t = slot(i, j, k);
                mfe.sigma.set(t, i, 1);
                mfe.pi2[t] = slot(j, i, k);
                mfe.pi3[t] = slot(k, i, j);
                uint32_t power = f.pow(alpha, static_cast<uint64_t>(i) + j + k);
                for (int bit = 0; bit < m; ++bit) mfe.psi.set(bit, t, power >> bit & 1);
            }

    if (rank(mfe.sigma) != static_cast<size_t>(m))
        throw std::logic_error("mfe3: sigma is not injective");
    if (rank(mfe.psi) != static_cast<size_t>(m)) throw std::logic_error("mfe3: psi is not surjective");
    return mfe;
}

MfeCheckMode MfeCheckMode::auto_for(const Field& f, uint64_t seed) {
    MfeCheckMode mode;
    mode.exhaustive = f.degree() <= 3;
    mode.seed = seed;
    return mode;
}

namespace {

uint32_t apply_gf2(const Mat& m, uint32_t bits) {
    // bits hold a column vector; result bit i = parity(row_i & bits).
    uint32_t out = 0;
    for (size_t i = 0; i < m.rows(); ++i) {
        uint32_t acc = 0;
        for (size_t j = 0; j < m.cols(); ++j) acc ^= m.at(i, j) & (bits >> j & 1);
        out |= acc << i;
    }
    return out;
}

std::optional<MfeWitness> mfe_check_one(const Mfe& mfe, const Field& f, uint32_t x, uint32_t y,
                                        uint32_t z) {
    const size_t r = mfe.r;
    // sigma acts on polynomial coordinates, which are the raw bit patterns.
    std::vector<uint8_t> sx(r), sy(r), sz(r);
    for (size_t t = 0; t < r; ++t) {
        uint32_t xi = 0, yi = 0, zi = 0;
        for (int j = 0; j < mfe.m; ++j) {
            xi ^= mfe.sigma.at(t, j) & (x >> j & 1);
            yi ^= mfe.sigma.at(t, j) & (y >> j & 1);
            zi ^= mfe.sigma.at(t, j) & (z >> j & 1);
        }
        sx[t] = static_cast<uint8_t>(xi);
        sy[t] = static_cast<uint8_t>(yi);
        sz[t] = static_cast<uint8_t>(zi);
    }
    uint32_t out = 0;
    for (size_t t = 0; t < r; ++t) {
        uint8_t prod = sx[t] & sy[mfe.pi2[t]] & sz[mfe.pi3[t]];
        if (!prod) continue;
        for (int bit = 0; bit < mfe.m; ++bit) out ^= (mfe.psi.at(bit, t) & 1u) << bit;
    }
    uint32_t expect = f.mul(f.mul(x, y), z);
    if (out != expect) return MfeWitness{x, y, z, expect, out};
    return std::nullopt;
}

} // namespace

std::optional<MfeWitness> mfe_verify(const Mfe& mfe, const Field& f, const MfeCheckMode& mode) {
    if (mfe.m != f.degree()) throw std::invalid_argument("mfe_verify: degree mismatch");
    if (mode.exhaustive) {
        for (uint32_t x = 0; x < f.q(); ++x)
            for (uint32_t y = 0; y < f.q(); ++y)
                for (uint32_t z = 0; z < f.q(); ++z)
                    if (auto w = mfe_check_one(mfe, f, x, y, z)) return w;
        return std::nullopt;
    }
    SplitMix64 rng(mode.seed);
    for (uint64_t t = 0; t < mode.trials; ++t) {
        uint32_t x = static_cast<uint32_t>(rng.below(f.q()));
        uint32_t y = static_cast<uint32_t>(rng.below(f.q()));
        uint32_t z = static_cast<uint32_t>(rng.below(f.q()));
        if (auto w = mfe_check_one(mfe, f, x, y, z)) return w;
    }
    return std::nullopt;
}

Rmfe rmfe_trivial(const Field& f) {
    const Field& gf2 = Field::make(1);
    Rmfe rmfe;
    rmfe.s = 1;
    rmfe.m = f.degree();
    rmfe.phi = Mat(gf2, f.degree(), 1);
    rmfe.phi.set(0, 0, 1); // phi(b) = b * 1; element 1 has polynomial coords e_0
    rmfe.psi = Mat(gf2, 1, f.degree());
    rmfe.psi.set(0, 0, 1); // psi = coefficient of the basis element 1
    return rmfe;
}

std::optional<MfeWitness> rmfe_check(const Rmfe& rmfe, const Field& f) {
    if (rmfe.m != f.degree()) throw std::invalid_argument("rmfe_check: degree mismatch");
    const uint32_t space = 1u << rmfe.s;
    for (uint32_t x = 0; x < space; ++x)
        for (uint32_t y = 0; y < space; ++y)
            for (uint32_t z = 0; z < space; ++z) {
                uint32_t ex = apply_gf2(rmfe.phi, x);
                uint32_t ey = apply_gf2(rmfe.phi, y);
                uint32_t ez = apply_gf2(rmfe.phi, z);
                uint32_t inner = f.mul(f.mul(ex, ey), ez);
                uint32_t got = apply_gf2(rmfe.psi, inner);
                uint32_t expect = x & y & z;
                if (got != expect) return MfeWitness{x, y, z, expect, got};
            }
    return std::nullopt;
}

std::optional<Rmfe> rmfe_search(int s, const Field& f, uint64_t seed, uint64_t budget) {
    if (s < 1 || s > 4) throw std::invalid_argument("rmfe_search: s must be in [1, 4]");
    if (f.degree() > 12) throw std::invalid_argument("rmfe_search: m must be <= 12");
    const int m = f.degree();
    if (s > m) return std::nullopt; // phi cannot be injective
    const Field& gf2 = Field::make(1);

    const uint32_t space = 1u << s;
    const uint64_t candidates = uint64_t(1) << (static_cast<uint64_t>(s) * m);

    auto try_candidate = [&](uint64_t bits) -> std::optional<Rmfe> {
        // Column l of phi = chunk l of the candidate index.
        Mat phi(gf2, m, s);
        for (int l = 0; l < s; ++l)
            for (int row = 0; row < m; ++row)
                phi.set(row, l, bits >> (static_cast<uint64_t>(l) * m + row) & 1);
        if (rank(phi) != static_cast<size_t>(s)) return std::nullopt;

        // Equations: psi * coords(phi(x) phi(y) phi(z)) = x & y & z, solved
        // per output coordinate.
        std::vector<std::vector<uint32_t>> lhs;
        std::vector<uint32_t> rhs_masks;
        for (uint32_t x = 0; x < space; ++x)
            for (uint32_t y = 0; y < space; ++y)
                for (uint32_t z = 0; z < space; ++z) {
                    uint32_t e = f.mul(f.mul(apply_gf2(phi, x), apply_gf2(phi, y)), apply_gf2(phi, z));
                    std::vector<uint32_t> row(m);
                    for (int j = 0; j < m; ++j) row[j] = e >> j & 1;
                    lhs.push_back(std::move(row));
                    rhs_masks.push_back(x & y & z);
                }
        Mat a = Mat::from_rows(gf2, lhs);
        Rmfe rmfe;
        rmfe.s = s;
        rmfe.m = m;
        rmfe.phi = phi;
        rmfe.psi = Mat(gf2, s, m);
        for (int l = 0; l < s; ++l) {
            std::vector<uint32_t> b(rhs_masks.size());
            for (size_t i = 0; i < b.size(); ++i) b[i] = rhs_masks[i] >> l & 1;
            auto sol = solve(a, b);
            if (!sol) return std::nullopt;
            for (int j = 0; j < m; ++j) rmfe.psi.set(l, j, (*sol)[j]);
        }
        if (rank(rmfe.psi) != static_cast<size_t>(s)) return std::nullopt;
        if (rmfe_check(rmfe, f)) return std::nullopt; // identity failed
        return rmfe;
    };

    if (candidates <= budget) {
        for (uint64_t bits = 0; bits < candidates; ++bits)
            if (auto r = try_candidate(bits)) return r;
        return std::nullopt;
    }
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < budget; ++t)
        if (auto r = try_candidate(rng.below(candidates))) return r;
    return std::nullopt;
}

namespace {

std::string row_to_hex(const Mat& m, size_t row) {
    // Bit j of the row is bit j of the value; emitted as big-endian hex.
    const size_t nibbles = (m.cols() + 3) / 4;
    std::string out;
    for (size_t n = nibbles; n-- > 0;) {
        int nibble = 0;
        for (size_t b = 0; b < 4; ++b) {
            size_t j = n * 4 + b;
            if (j < m.cols() && m.at(row, j)) nibble |= 1 << b;
        }
        out += "0123456789abcdef"[nibble];
    }
    return "0x" + out;
}

nlohmann::ordered_json mat_to_hex_rows(const Mat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (size_t i = 0; i < m.rows(); ++i) rows.push_back(row_to_hex(m, i));
    return rows;
}

Mat mat_from_hex_rows(const nlohmann::json& rows, size_t cols) {
    Mat m(Field::make(1), rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        std::string text = rows[i].get<std::string>();
        if (text.rfind("0x", 0) != 0) throw std::invalid_argument("hex row must start with 0x");
        std::string hex = text.substr(2);
        for (size_t n = 0; n < hex.size(); ++n) {
            char c = hex[hex.size() - 1 - n];
            int nibble = c >= 'a' ? c - 'a' + 10 : c >= 'A' ? c - 'A' + 10 : c - '0';
            for (size_t b = 0; b < 4; ++b) {
                size_t j = n * 4 + b;
                if ((nibble >> b & 1) && j < cols) m.set(i, j, 1);
            }
        }
    }
    return m;
}

} // namespace

std::string mfe_to_json(const Mfe& mfe) {
    nlohmann::ordered_json j;
    j["kind"] = "mfe3";
    j["m"] = mfe.m;
    j["r"] = mfe.r;
    j["sigma"] = mat_to_hex_rows(mfe.sigma);
    j["pi2"] = mfe.pi2;
    j["pi3"] = mfe.pi3;
    j["psi"] = mat_to_hex_rows(mfe.psi);
    return j.dump(2);
}

Mfe mfe_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Mfe mfe;
    mfe.m = j.at("m").get<int>();
    mfe.r = j.at("r").get<size_t>();
    mfe.sigma = mat_from_hex_rows(j.at("sigma"), mfe.m);
    mfe.psi = mat_from_hex_rows(j.at("psi"), mfe.r);
    mfe.pi2 = j.at("pi2").get<std::vector<size_t>>();
    mfe.pi3 = j.at("pi3").get<std::vector<size_t>>();
    if (mfe.sigma.rows() != mfe.r || mfe.pi2.size() != mfe.r || mfe.pi3.size() != mfe.r)
        throw std::invalid_argument("mfe_from_json: inconsistent dimensions");
    return mfe;
}

std::string rmfe_to_json(const Rmfe& rmfe) {
    nlohmann::ordered_json j;
    j["kind"] = "rmfe3";
    j["s"] = rmfe.s;
    j["m"] = rmfe.m;
    j["phi"] = mat_to_hex_rows(rmfe.phi);
    j["psi"] = mat_to_hex_rows(rmfe.psi);
    return j.dump(2);
}

Rmfe rmfe_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Rmfe rmfe;
    rmfe.s = j.at("s").get<int>();
    rmfe.m = j.at("m").get<int>();
    rmfe.phi = mat_from_hex_rows(j.at("phi"), rmfe.s);
    rmfe.psi = mat_from_hex_rows(j.at("psi"), rmfe.m);
    if (rmfe.phi.rows() != static_cast<size_t>(rmfe.m) ||
        rmfe.psi.rows() != static_cast<size_t>(rmfe.s))
        throw std::invalid_argument("rmfe_from_json: inconsistent dimensions");
    return rmfe;
}

} // namespace starq
