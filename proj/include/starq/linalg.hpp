#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "starq/field.hpp"

namespace starq {

/// Dense matrix over GF(2^m). Entries are raw element bit patterns; the field
/// is attached to the matrix and checked whenever two matrices meet.
class Mat {
  public:
    /// Empty 0 x 0 matrix over GF(2); lets matrices sit in aggregates that
    /// are filled in later.
    Mat();
    Mat(const Field& f, size_t rows, size_t cols);
    static Mat identity(const Field& f, size_t n);
    static Mat from_rows(const Field& f, const std::vector<std::vector<uint32_t>>& rows);

    const Field& field() const { return *field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint32_t at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    void set(size_t r, size_t c, uint32_t v);

    std::span<const uint32_t> row(size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<uint32_t> row(size_t r) { return {data_.data() + r * cols_, cols_}; }

    bool operator==(const Mat& o) const;

    bool is_zero() const;

  private:
    const Field* field_;
    size_t rows_, cols_;
    std::vector<uint32_t> data_;
};

struct RrefResult {
    Mat r;
    size_t rank;
    std::vector<size_t> pivots; // column of each pivot row, strictly increasing
};

/// Reduced row echelon form with the leftmost-pivot rule; fully deterministic.
RrefResult rref(const Mat& m);

size_t rank(const Mat& m);

/// Basis of the right null space as rows: m * transpose(result) == 0,
/// rank(result) == cols - rank(m). Deterministic (free columns in order).
Mat nullspace(const Mat& m);

bool in_rowspace(const Mat& m, std::span<const uint32_t> v);
/// True iff every row of sub lies in the row space of m.
bool rowspace_contains(const Mat& m, const Mat& sub);
bool same_rowspace(const Mat& a, const Mat& b);

Mat mat_mul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);
Mat vstack(const Mat& top, const Mat& bottom);

/// <a, b> = sum_i a_i * b_i over the field.
uint32_t dot(const Field& f, std::span<const uint32_t> a, std::span<const uint32_t> b);

std::vector<uint32_t> mat_vec(const Mat& m, std::span<const uint32_t> v);
/// row vector * matrix
std::vector<uint32_t> vec_mat(std::span<const uint32_t> v, const Mat& m);

/// Least-index particular solution x of A x = b, or nullopt if inconsistent.
std::optional<std::vector<uint32_t>> solve(const Mat& a, std::span<const uint32_t> b);

/// Right inverse R of A (A * R = I) for a full-row-rank A; deterministic
/// (columns of R supported on the rref pivot columns).
Mat right_inverse(const Mat& a);

/// Invertible m x m GF(2) matrix T with to.expand(x) == T * from.expand(x)
/// for every field element x (coordinates as bit columns).
Mat change_of_basis(const FieldBasis& from, const FieldBasis& to);

/// Text format:
///   mat <rows> <cols> gf2m m=<m> poly=0x<hex>
/// then one row per line, entries in hex separated by spaces. Lines starting
/// with '#' are comments and are skipped on read.
void write_mat(std::ostream& out, const Mat& m);
Mat read_mat(std::istream& in);

} // namespace starq
