#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace starq {

/// Binary extension field GF(2^m), 1 <= m <= 16, with a fixed degree-m
/// irreducible modulus. Elements are integers in [0, 2^m); bit i is the
/// coefficient of x^i in the polynomial basis (little-endian).
///
/// Canonical fields come from a compiled-in modulus table (the
/// lexicographically least irreducible of each degree, except m=1 where
/// x+1 is used so that reduction is well defined); Field::make(m) always
/// returns the same singleton, so field identity is pointer identity.
class Field {
  public:
    static constexpr int kMaxDegree = 16;

    /// Canonical field of degree m. Throws std::invalid_argument if m is out
    /// of range. The returned reference is valid for the program lifetime.
    static const Field& make(int m);

    int degree() const { return m_; }
    uint32_t modulus() const { return modulus_; }
    uint32_t q() const { return 1u << m_; }

    uint32_t add(uint32_t a, uint32_t b) const { return a ^ b; }
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const; // throws on a == 0
    uint32_t pow(uint32_t a, uint64_t e) const;

    /// Tr(a) = a + a^2 + a^4 + ... + a^(2^(m-1)), always 0 or 1.
    uint32_t trace(uint32_t a) const;

    /// Serialized form: "gf2m m=<m> poly=0x<hex>".
    std::string spec_string() const;

    bool same(const Field& other) const { return this == &other; }

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

  private:
    Field(int m, uint32_t modulus);

    int m_;
    uint32_t modulus_;
    std::vector<uint8_t> trace_table_;
};

/// Field element with its field attached; arithmetic between elements of
/// different fields throws. Thin sugar over the raw Field operations.
class FElem {
  public:
    FElem(const Field& f, uint32_t bits);

    uint32_t bits() const { return bits_; }
    const Field& field() const { return *field_; }

    FElem operator+(const FElem& o) const;
    FElem operator*(const FElem& o) const;
    FElem inverse() const;
    FElem pow(uint64_t e) const;
    uint32_t trace() const { return field_->trace(bits_); }

    bool operator==(const FElem& o) const { return field_ == o.field_ && bits_ == o.bits_; }

  private:
    const Field* field_;
    uint32_t bits_;
};

enum class BasisKind { polynomial, self_dual, other };

/// An ordered GF(2)-basis {a_1,...,a_m} of GF(2^m). The expansion matrix is
/// inverted once at construction; linear dependence is rejected there.
class FieldBasis {
  public:
    FieldBasis(const Field& f, std::vector<uint32_t> elements, BasisKind kind);

    /// The polynomial basis {1, x, x^2, ...}; expand() is then the identity
    /// on bit patterns.
    static FieldBasis polynomial(const Field& f);

    const Field& field() const { return *field_; }
    BasisKind kind() const { return kind_; }
    const std::vector<uint32_t>& elements() const { return elements_; }

    /// Coordinates of x in this basis, bit j = coefficient of elements()[j].
    uint32_t expand(uint32_t x) const;
    /// Inverse of expand: combine(expand(x)) == x.
    uint32_t combine(uint32_t coords) const;

  private:
    const Field* field_;
    std::vector<uint32_t> elements_;
    BasisKind kind_;
    std::vector<uint32_t> expand_rows_; // row i of the inverse expansion matrix
};

} // namespace starq
