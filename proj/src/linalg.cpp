#include "starq/linalg.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace starq {

namespace {
void require_same_field(const Field& a, const Field& b, const char* what) {
    if (!a.same(b)) throw std::invalid_argument(std::string(what) + ": mixed fields");
}
} // namespace

Mat::Mat() : field_(&Field::make(1)), rows_(0), cols_(0) {}

Mat::Mat(const Field& f, size_t rows, size_t cols)
    : field_(&f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Mat Mat::identity(const Field& f, size_t n) {
    Mat m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Mat Mat::from_rows(const Field& f, const std::vector<std::vector<uint32_t>>& rows) {
    if (rows.empty()) return Mat(f, 0, 0);
    Mat m(f, rows.size(), rows[0].size());
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size())
            throw std::invalid_argument("Mat::from_rows: ragged rows");
        for (size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

void Mat::set(size_t r, size_t c, uint32_t v) {
    if (v >= field_->q()) throw std::invalid_argument("Mat::set: entry out of range for field");
    data_[r * cols_ + c] = v;
}

bool Mat::operator==(const Mat& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Mat::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](uint32_t v) { return v == 0; });
}

RrefResult rref(const Mat& m) {
    const Field& f = m.field();
    Mat r = m;
    std::vector<size_t> pivots;
    size_t pivot_row = 0;
    for (size_t col = 0; col < r.cols() && pivot_row < r.rows(); ++col) {
        size_t sel = pivot_row;
        while (sel < r.rows() && r.at(sel, col) == 0) ++sel;
        if (sel == r.rows()) continue;
        if (sel != pivot_row)
            for (size_t c = 0; c < r.cols(); ++c) {
                uint32_t tmp = r.at(pivot_row, c);
                r.set(pivot_row, c, r.at(sel, c));
                r.set(sel, c, tmp);
            }
        uint32_t scale = f.inv(r.at(pivot_row, col));
        if (scale != 1)
            for (size_t c = 0; c < r.cols(); ++c) r.set(pivot_row, c, f.mul(scale, r.at(pivot_row, c)));
        for (size_t row = 0; row < r.rows(); ++row) {
            if (row == pivot_row) continue;
            uint32_t factor = r.at(row, col);
            if (factor == 0) continue;
            for (size_t c = 0; c < r.cols(); ++c)
                r.set(row, c, f.add(r.at(row, c), f.mul(factor, r.at(pivot_row, c))));
        }
        pivots.push_back(col);
        ++pivot_row;
    }
    return RrefResult{std::move(r), pivots.size(), std::move(pivots)};
}

size_t rank(const Mat& m) { return rref(m).rank; }

Mat nullspace(const Mat& m) {
    const Field& f = m.field();
    RrefResult rr = rref(m);
    std::vector<size_t> free_cols;
    {
        size_t p = 0;
        for (size_t c = 0; c < m.cols(); ++c) {
            if (p < rr.pivots.size() && rr.pivots[p] == c)
                ++p;
            else
                free_cols.push_back(c);
        }
    }
    Mat basis(f, free_cols.size(), m.cols());
    for (size_t i = 0; i < free_cols.size(); ++i) {
        size_t fc = free_cols[i];
        basis.set(i, fc, 1);
        for (size_t p = 0; p < rr.pivots.size(); ++p)
            basis.set(i, rr.pivots[p], rr.r.at(p, fc)); // -x == x in char 2
    }
    return basis;
}

bool in_rowspace(const Mat& m, std::span<const uint32_t> v) {
    if (v.size() != m.cols()) throw std::invalid_argument("in_rowspace: width mismatch");
    const Field& f = m.field();
    RrefResult rr = rref(m);
    std::vector<uint32_t> residual(v.begin(), v.end());
    for (size_t p = 0; p < rr.pivots.size(); ++p) {
        uint32_t coeff = residual[rr.pivots[p]];
        if (coeff == 0) continue;
        for (size_t c = 0; c < m.cols(); ++c)
            residual[c] = f.add(residual[c], f.mul(coeff, rr.r.at(p, c)));
    }
    return std::all_of(residual.begin(), residual.end(), [](uint32_t x) { return x == 0; });
}

bool rowspace_contains(const Mat& m, const Mat& sub) {
    require_same_field(m.field(), sub.field(), "rowspace_contains");
    if (sub.cols() != m.cols()) throw std::invalid_argument("rowspace_contains: width mismatch");
    const Field& f = m.field();
    RrefResult rr = rref(m);
    for (size_t r = 0; r < sub.rows(); ++r) {
        std::vector<uint32_t> residual(sub.row(r).begin(), sub.row(r).end());
        for (size_t p = 0; p < rr.pivots.size(); ++p) {
            uint32_t coeff = residual[rr.pivots[p]];
            if (coeff == 0) continue;
            for (size_t c = 0; c < m.cols(); ++c)
                residual[c] = f.add(residual[c], f.mul(coeff, rr.r.at(p, c)));
        }
        if (!std::all_of(residual.begin(), residual.end(), [](uint32_t x) { return x == 0; }))
            return false;
    }
    return true;
}

bool same_rowspace(const Mat& a, const Mat& b) {
    return rowspace_contains(a, b) && rowspace_contains(b, a);
}

Mat mat_mul(const Mat& a, const Mat& b) {
    require_same_field(a.field(), b.field(), "mat_mul");
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
    const Field& f = a.field();
    Mat out(f, a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            uint32_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (size_t j = 0; j < b.cols(); ++j)
                if (b.at(k, j)) out.set(i, j, f.add(out.at(i, j), f.mul(aik, b.at(k, j))));
        }
    return out;
}

Mat transpose(const Mat& m) {
    Mat out(m.field(), m.cols(), m.rows());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out.set(j, i, m.at(i, j));
    return out;
}

Mat vstack(const Mat& top, const Mat& bottom) {
    require_same_field(top.field(), bottom.field(), "vstack");
    if (top.rows() == 0) return bottom;
    if (bottom.rows() == 0) return top;
    if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: width mismatch");
    Mat out(top.field(), top.rows() + bottom.rows(), top.cols());
    for (size_t i = 0; i < top.rows(); ++i)
        for (size_t j = 0; j < top.cols(); ++j) out.set(i, j, top.at(i, j));
    for (size_t i = 0; i < bottom.rows(); ++i)
        for (size_t j = 0; j < bottom.cols(); ++j) out.set(top.rows() + i, j, bottom.at(i, j));
    return out;
}

uint32_t dot(const Field& f, std::span<const uint32_t> a, std::span<const uint32_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    uint32_t acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
    return acc;
}

std::vector<uint32_t> mat_vec(const Mat& m, std::span<const uint32_t> v) {
    if (v.size() != m.cols()) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<uint32_t> out(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.field(), m.row(i), v);
    return out;
}

std::vector<uint32_t> vec_mat(std::span<const uint32_t> v, const Mat& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vec_mat: shape mismatch");
    const Field& f = m.field();
    std::vector<uint32_t> out(m.cols(), 0);
    for (size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < m.cols(); ++j)
            out[j] = f.add(out[j], f.mul(v[i], m.at(i, j)));
    }
    return out;
}

std::optional<std::vector<uint32_t>> solve(const Mat& a, std::span<const uint32_t> b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
    const Field& f = a.field();
    Mat aug(f, a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug.set(i, j, a.at(i, j));
        aug.set(i, a.cols(), b[i]);
    }
    RrefResult rr = rref(aug);
    std::vector<uint32_t> x(a.cols(), 0);
    for (size_t p = 0; p < rr.pivots.size(); ++p) {
        if (rr.pivots[p] == a.cols()) return std::nullopt; // pivot in the rhs column
        x[rr.pivots[p]] = rr.r.at(p, a.cols());
    }
    return x;
}

Mat right_inverse(const Mat& a) {
    const Field& f = a.field();
    Mat out(f, a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i) {
        std::vector<uint32_t> e(a.rows(), 0);
        e[i] = 1;
        auto x = solve(a, e);
        if (!x) throw std::invalid_argument("right_inverse: matrix does not have full row rank");
        for (size_t j = 0; j < a.cols(); ++j) out.set(j, i, (*x)[j]);
    }
    return out;
}

Mat change_of_basis(const FieldBasis& from, const FieldBasis& to) {
    require_same_field(from.field(), to.field(), "change_of_basis");
    const Field& gf2 = Field::make(1);
    const int m = from.field().degree();
    // Column j of T is to.expand applied to the j-th 'from' basis element.
    Mat t(gf2, m, m);
    for (int j = 0; j < m; ++j) {
        uint32_t col = to.expand(from.elements()[j]);
        for (int i = 0; i < m; ++i) t.set(i, j, col >> i & 1);
    }
    return t;
}

void write_mat(std::ostream& out, const Mat& m) {
    out << "mat " << m.rows() << " " << m.cols() << " " << m.field().spec_string() << "\n";
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) {
            if (j) out << " ";
            out << std::hex << m.at(i, j) << std::dec;
        }
        out << "\n";
    }
}

Mat read_mat(std::istream& in) {
    std::string line;
    std::string header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = line;
        break;
    }
    std::istringstream hs(header);
    std::string tag, gftag, mfield, polyfield;
    size_t rows = 0, cols = 0;
    hs >> tag >> rows >> cols >> gftag >> mfield >> polyfield;
    if (tag != "mat" || gftag != "gf2m" || mfield.rfind("m=", 0) != 0 || polyfield.rfind("poly=0x", 0) != 0)
        throw std::invalid_argument("read_mat: bad header: " + header);
    int m = std::stoi(mfield.substr(2));
    uint32_t poly = static_cast<uint32_t>(std::stoul(polyfield.substr(7), nullptr, 16));
    const Field& f = Field::make(m);
    if (f.modulus() != poly)
        throw std::invalid_argument("read_mat: modulus does not match the canonical field");
    Mat out(f, rows, cols);
    size_t r = 0;
    while (r < rows && std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        for (size_t c = 0; c < cols; ++c) {
            std::string entry;
            if (!(ls >> entry)) throw std::invalid_argument("read_mat: short row");
            out.set(r, c, static_cast<uint32_t>(std::stoul(entry, nullptr, 16)));
        }
        ++r;
    }
    if (r != rows) throw std::invalid_argument("read_mat: missing rows");
    return out;
}

} // namespace starq
