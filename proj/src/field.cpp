#include "starq/field.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace starq {

namespace {

// Lexicographically least irreducible polynomial of degree m over GF(2),
// encoded with bit i = coefficient of x^i. Degree 1 uses x+1 (not x) so that
// reduction maps x to 1 and GF(2) arithmetic comes out of the same code path.
constexpr std::array<uint32_t, Field::kMaxDegree + 1> kCanonicalModulus = {
    0,        // unused
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xb,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x83,     // x^7 + x + 1
    0x11b,    // x^8 + x^4 + x^3 + x + 1
    0x203,    // x^9 + x + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1009,   // x^12 + x^3 + 1
    0x201b,   // x^13 + x^4 + x^3 + x + 1
    0x4021,   // x^14 + x^5 + 1
    0x8003,   // x^15 + x + 1
    0x1002b,  // x^16 + x^5 + x^3 + x + 1
};

} // namespace

Field::Field(int m, uint32_t modulus) : m_(m), modulus_(modulus) {
    trace_table_.resize(q());
    for (uint32_t a = 0; a < q(); ++a) {
        uint32_t acc = 0;
        uint32_t p = a;
        for (int i = 0; i < m_; ++i) {
            acc ^= p;
            p = mul(p, p);
        }
        if (acc > 1)
            throw std::logic_error("trace left the prime field; modulus is not irreducible");
        trace_table_[a] = static_cast<uint8_t>(acc);
    }
}

const Field& Field::make(int m) {
    if (m < 1 || m > kMaxDegree)
        throw std::invalid_argument("Field::make: degree must be in [1, 16]");
    static std::array<std::unique_ptr<Field>, kMaxDegree + 1> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    if (!cache[m])
        cache[m].reset(new Field(m, kCanonicalModulus[m]));
    return *cache[m];
}

uint32_t Field::mul(uint32_t a, uint32_t b) const {
    // Carry-less multiply followed by reduction mod the modulus.
    uint64_t acc = 0;
    uint64_t x = a;
    while (b) {
        if (b & 1) acc ^= x;
        b >>= 1;
        x <<= 1;
    }
    for (int bit = 2 * m_ - 2; bit >= m_; --bit)
        if (acc >> bit & 1) acc ^= static_cast<uint64_t>(modulus_) << (bit - m_);
    return static_cast<uint32_t>(acc & (q() - 1));
}

uint32_t Field::pow(uint32_t a, uint64_t e) const {
    uint32_t result = 1;
    uint32_t base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

uint32_t Field::inv(uint32_t a) const {
    if (a == 0) throw std::invalid_argument("Field::inv: zero has no inverse");
    return pow(a, q() - 2);
}

uint32_t Field::trace(uint32_t a) const { return trace_table_[a]; }

std::string Field::spec_string() const {
    std::ostringstream out;
    out << "gf2m m=" << m_ << " poly=0x" << std::hex << modulus_;
    return out.str();
}

FElem::FElem(const Field& f, uint32_t bits) : field_(&f), bits_(bits) {
    if (bits >= f.q()) throw std::invalid_argument("FElem: bits out of range for field");
}

namespace {
void require_same_field(const Field* a, const Field* b) {
    if (a != b) throw std::invalid_argument("FElem: operands belong to different fields");
}
} // namespace

FElem FElem::operator+(const FElem& o) const {
    require_same_field(field_, o.field_);
    return FElem(*field_, field_->add(bits_, o.bits_));
}

FElem FElem::operator*(const FElem& o) const {
    require_same_field(field_, o.field_);
    return FElem(*field_, field_->mul(bits_, o.bits_));
}

FElem FElem::inverse() const { return FElem(*field_, field_->inv(bits_)); }

FElem FElem::pow(uint64_t e) const { return FElem(*field_, field_->pow(bits_, e)); }

FieldBasis::FieldBasis(const Field& f, std::vector<uint32_t> elements, BasisKind kind)
    : field_(&f), elements_(std::move(elements)), kind_(kind) {
    const int m = f.degree();
    if (static_cast<int>(elements_.size()) != m)
        throw std::invalid_argument("FieldBasis: need exactly m elements");
    for (uint32_t e : elements_)
        if (e >= f.q()) throw std::invalid_argument("FieldBasis: element out of range");

    // Invert the m x m expansion matrix over GF(2) (column j = elements_[j]).
    // Gauss-Jordan on rows of [E | I], rows kept as 2m-bit masks.
    std::vector<uint64_t> rows(m);
    for (int i = 0; i < m; ++i) {
        uint64_t row = 0;
        for (int j = 0; j < m; ++j)
            row |= static_cast<uint64_t>(elements_[j] >> i & 1) << j;
        rows[i] = row | (1ull << (m + i));
    }
    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int r = col; r < m; ++r)
            if (rows[r] >> col & 1) { pivot = r; break; }
        if (pivot < 0)
            throw std::invalid_argument("FieldBasis: elements are linearly dependent");
        std::swap(rows[col], rows[pivot]);
        for (int r = 0; r < m; ++r)
            if (r != col && (rows[r] >> col & 1)) rows[r] ^= rows[col];
    }
    expand_rows_.resize(m);
    for (int i = 0; i < m; ++i)
        expand_rows_[i] = static_cast<uint32_t>(rows[i] >> m);
}

FieldBasis FieldBasis::polynomial(const Field& f) {
    std::vector<uint32_t> elems(f.degree());
    for (int i = 0; i < f.degree(); ++i) elems[i] = 1u << i;
    return FieldBasis(f, std::move(elems), BasisKind::polynomial);
}

uint32_t FieldBasis::expand(uint32_t x) const {
    if (x >= field_->q()) throw std::invalid_argument("FieldBasis::expand: out of range");
    uint32_t coords = 0;
    for (size_t i = 0; i < expand_rows_.size(); ++i)
        coords |= static_cast<uint32_t>(__builtin_parity(expand_rows_[i] & x)) << i;
    return coords;
}

uint32_t FieldBasis::combine(uint32_t coords) const {
    if (coords >= field_->q()) throw std::invalid_argument("FieldBasis::combine: dimension mismatch");
    uint32_t x = 0;
    for (size_t j = 0; j < elements_.size(); ++j)
        if (coords >> j & 1) x ^= elements_[j];
    return x;
}

} // namespace starq
