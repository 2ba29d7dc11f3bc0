#include "starq/codes.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace starq {

namespace {
// Internal constructor that tolerates k = 0 (duals of full codes, shortening
// away everything). User-facing construction goes through make_code.
LinearCode from_row_basis(Mat gen, std::string label) {
    LinearCode c{gen.cols(), gen.rows(), std::move(gen), std::move(label)};
    return c;
}
} // namespace

LinearCode make_code(Mat gen, std::string label) {
    RrefResult rr = rref(gen);
    if (rr.rank != gen.rows())
        throw std::invalid_argument("make_code: generator rows are linearly dependent (" + label + ")");
    if (gen.rows() == 0 || gen.rows() > gen.cols())
        throw std::invalid_argument("make_code: need 1 <= k <= n (" + label + ")");
    LinearCode c{gen.cols(), gen.rows(), std::move(gen), std::move(label)};
    return c;
}

std::vector<uint32_t> star(const Field& f, std::span<const uint32_t> x, std::span<const uint32_t> y) {
    if (x.size() != y.size()) throw std::invalid_argument("star: length mismatch");
    std::vector<uint32_t> out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = f.mul(x[i], y[i]);
    return out;
}

LinearCode star_power_code(const LinearCode& c, int t) {
    if (t < 2) throw std::invalid_argument("star_power_code: t must be >= 2");
    const Field& f = c.field();
    // All t-fold products of generator rows, indices nondecreasing.
    std::vector<std::vector<uint32_t>> products;
    std::vector<size_t> idx(t, 0);
    while (true) {
        std::vector<uint32_t> prod(c.gen.row(idx[0]).begin(), c.gen.row(idx[0]).end());
        for (int j = 1; j < t; ++j) prod = star(f, prod, c.gen.row(idx[j]));
        products.push_back(std::move(prod));
        int j = t - 1;
        while (j >= 0 && idx[j] == c.k - 1) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l < t; ++l) idx[l] = idx[j];
    }
    RrefResult rr = rref(Mat::from_rows(f, products));
    Mat gen(f, rr.rank, c.n);
    for (size_t i = 0; i < rr.rank; ++i)
        for (size_t j = 0; j < c.n; ++j) gen.set(i, j, rr.r.at(i, j));
    return make_code(std::move(gen), c.label + "^*" + std::to_string(t));
}

LinearCode dual(const LinearCode& c) {
    Mat basis = nullspace(c.gen);
    return from_row_basis(std::move(basis), c.label + "^perp");
}

bool contains_all_ones(const LinearCode& c) {
    std::vector<uint32_t> ones(c.n, 1);
    return in_rowspace(c.gen, ones);
}

MultPropertyReport check_mult_property(const LinearCode& c, int t) {
    if (t < 2) throw std::invalid_argument("check_mult_property: t must be >= 2");
    const Field& f = c.field();
    MultPropertyReport report;

    LinearCode power = star_power_code(c, t);
    LinearCode d = dual(c);
    report.subset_holds = rowspace_contains(d.gen, power.gen);

    // (t+1)-tuple route: sum_i prod_a g_{a,i} = 0 for all row tuples.
    report.tuple_holds = true;
    std::vector<size_t> idx(t + 1, 0);
    while (report.tuple_holds) {
        uint32_t acc = 0;
        for (size_t i = 0; i < c.n; ++i) {
            uint32_t prod = c.gen.at(idx[0], i);
            for (int j = 1; j <= t && prod; ++j) prod = f.mul(prod, c.gen.at(idx[j], i));
            acc = f.add(acc, prod);
        }
        if (acc != 0) {
            report.tuple_holds = false;
            report.violating_tuple = idx;
            break;
        }
        int j = t;
        while (j >= 0 && idx[j] == c.k - 1) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l <= t; ++l) idx[l] = idx[j];
    }
    return report;
}

bool has_mult_property(const LinearCode& c, int t) {
    MultPropertyReport report = check_mult_property(c, t);
    if (!report.routes_agree())
        throw std::logic_error("has_mult_property: subset and tuple criteria disagree on " + c.label);
    return report.holds();
}

WeightResult min_distance(const LinearCode& c, uint64_t cap) { return min_weight(c.gen, cap); }

LinearCode puncture(const LinearCode& c, const std::vector<size_t>& cols) {
    std::set<size_t> drop(cols.begin(), cols.end());
    for (size_t col : drop)
        if (col >= c.n) throw std::invalid_argument("puncture: column out of range");
    if (drop.size() >= c.n) throw std::invalid_argument("puncture: empty remaining support");
    std::vector<size_t> keep;
    for (size_t j = 0; j < c.n; ++j)
        if (!drop.count(j)) keep.push_back(j);
    Mat rows(c.field(), c.k, keep.size());
    for (size_t i = 0; i < c.k; ++i)
        for (size_t j = 0; j < keep.size(); ++j) rows.set(i, j, c.gen.at(i, keep[j]));
    // Puncturing can drop the rank; re-extract a full-rank basis.
    RrefResult rr = rref(rows);
    Mat gen(c.field(), rr.rank, keep.size());
    for (size_t i = 0; i < rr.rank; ++i)
        for (size_t j = 0; j < keep.size(); ++j) gen.set(i, j, rr.r.at(i, j));
    return from_row_basis(std::move(gen), c.label + "/punct");
}

LinearCode shorten(const LinearCode& c, const std::vector<size_t>& cols) {
    std::set<size_t> drop(cols.begin(), cols.end());
    for (size_t col : drop)
        if (col >= c.n) throw std::invalid_argument("shorten: column out of range");
    if (drop.size() >= c.n) throw std::invalid_argument("shorten: empty remaining support");
    // Messages u with (u G) zero on the dropped columns.
    Mat restricted(c.field(), c.k, drop.size());
    {
        size_t j = 0;
        for (size_t col : drop) {
            for (size_t i = 0; i < c.k; ++i) restricted.set(i, j, c.gen.at(i, col));
            ++j;
        }
    }
    Mat messages = nullspace(transpose(restricted));
    std::vector<size_t> keep;
    for (size_t j = 0; j < c.n; ++j)
        if (!drop.count(j)) keep.push_back(j);
    Mat rows(c.field(), messages.rows(), keep.size());
    for (size_t i = 0; i < messages.rows(); ++i) {
        std::vector<uint32_t> word = vec_mat(messages.row(i), c.gen);
        for (size_t j = 0; j < keep.size(); ++j) rows.set(i, j, word[keep[j]]);
    }
    RrefResult rr = rref(rows);
    Mat gen(c.field(), rr.rank, keep.size());
    for (size_t i = 0; i < rr.rank; ++i)
        for (size_t j = 0; j < keep.size(); ++j) gen.set(i, j, rr.r.at(i, j));
    LinearCode result = from_row_basis(std::move(gen), c.label + "/short");
    // shorten(C, S) = dual(puncture(dual(C), S)), always.
    LinearCode via_dual = dual(puncture(dual(c), cols));
    if (result.k != via_dual.k || !same_rowspace(result.gen, via_dual.gen))
        throw std::logic_error("shorten: dual-puncture-dual identity failed on " + c.label);
    return result;
}

LinearCode rs_code(const Field& f, size_t k) {
    if (k < 1 || k > f.q()) throw std::invalid_argument("rs_code: need 1 <= k <= q");
    Mat gen(f, k, f.q());
    for (uint32_t a = 0; a < f.q(); ++a) {
        uint32_t p = 1;
        for (size_t j = 0; j < k; ++j) {
            gen.set(j, a, p);
            p = f.mul(p, a);
        }
    }
    std::ostringstream label;
    label << "rs q=" << f.q() << " k=" << k;
    return make_code(std::move(gen), label.str());
}

uint32_t hermitian_genus(uint32_t q0) { return q0 * (q0 - 1) / 2; }

namespace {
int field_degree_for_q(uint32_t q) {
    for (int m = 1; m <= Field::kMaxDegree; ++m)
        if ((1u << m) == q) return m;
    throw std::invalid_argument("not a supported field size");
}
} // namespace

LinearCode hermitian_code(uint32_t q0, uint32_t s) {
    if (q0 != 2 && q0 != 4) throw std::invalid_argument("hermitian_code: q0 must be 2 or 4");
    const uint32_t n = q0 * q0 * q0;
    if (s >= n) throw std::invalid_argument("hermitian_code: s must be < q0^3");
    const Field& f = Field::make(2 * field_degree_for_q(q0));

    // Affine points of y^q0 + y = x^(q0+1), lexicographic by (x, y).
    std::vector<std::pair<uint32_t, uint32_t>> points;
    for (uint32_t x = 0; x < f.q(); ++x)
        for (uint32_t y = 0; y < f.q(); ++y)
            if (f.add(f.pow(y, q0), y) == f.pow(x, q0 + 1)) points.emplace_back(x, y);
    if (points.size() != n)
        throw std::logic_error("hermitian_code: curve does not have q0^3 affine points");

    // Monomials x^i y^j with pole order i*q0 + j*(q0+1) <= s, ordered by (j, i).
    std::vector<std::pair<uint32_t, uint32_t>> monomials; // (i, j)
    for (uint32_t j = 0; j < q0; ++j)
        for (uint32_t i = 0; i * q0 + j * (q0 + 1) <= s; ++i) monomials.emplace_back(i, j);

    Mat gen(f, monomials.size(), n);
    for (size_t r = 0; r < monomials.size(); ++r)
        for (size_t c = 0; c < n; ++c) {
            auto [x, y] = points[c];
            auto [i, j] = monomials[r];
            gen.set(r, c, f.mul(f.pow(x, i), f.pow(y, j)));
        }
    std::ostringstream label;
    label << "hermitian q0=" << q0 << " s=" << s;
    return make_code(std::move(gen), label.str());
}

uint32_t hermitian_mult_window(uint32_t q0) {
    uint32_t n = q0 * q0 * q0;
    return (n + 2 * hermitian_genus(q0) - 2) / 3;
}

size_t rs_mult_window(const Field& f) { return (f.q() + 1) / 3; }

size_t AgParams::shortened_dual_d_bound(size_t K) const {
    int64_t v = static_cast<int64_t>(deg_g) - static_cast<int64_t>(K) + 2 - 2 * static_cast<int64_t>(genus);
    return v > 0 ? static_cast<size_t>(v) : 0;
}

AgParams ag_param_bounds(size_t n, uint32_t genus, uint32_t deg_g) {
    if (deg_g >= n) throw std::invalid_argument("ag_param_bounds: need deg_g < n");
    AgParams p;
    p.n = n;
    p.genus = genus;
    p.deg_g = deg_g;
    int64_t kb = static_cast<int64_t>(deg_g) + 1 - genus;
    p.k_bound = kb > 0 ? static_cast<size_t>(kb) : 0;
    p.k_exact = deg_g + 1 >= 2 * genus; // 2g - 1 <= deg_g
    p.d_bound = n - deg_g;
    int64_t dk = static_cast<int64_t>(n) + genus - 1 - deg_g;
    p.dual_k = dk > 0 ? static_cast<size_t>(dk) : 0;
    int64_t dd = static_cast<int64_t>(deg_g) + 2 - 2 * static_cast<int64_t>(genus);
    p.dual_d_bound = dd > 0 ? static_cast<size_t>(dd) : 0;
    return p;
}

void write_code(std::ostream& out, const LinearCode& c) {
    out << "mat " << c.gen.rows() << " " << c.gen.cols() << " " << c.field().spec_string() << "\n";
    out << "# label: " << c.label << "\n";
    for (size_t i = 0; i < c.gen.rows(); ++i) {
        for (size_t j = 0; j < c.gen.cols(); ++j) {
            if (j) out << " ";
            out << std::hex << c.gen.at(i, j) << std::dec;
        }
        out << "\n";
    }
}

LinearCode read_code(std::istream& in) {
    // Peel the label comment, then delegate to the matrix reader.
    std::stringstream buffer;
    std::string line;
    std::string label = "unlabeled";
    while (std::getline(in, line)) {
        if (line.rfind("# label: ", 0) == 0)
            label = line.substr(9);
        else
            buffer << line << "\n";
    }
    Mat gen = read_mat(buffer);
    return make_code(std::move(gen), label);
}

} // namespace starq
