#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "srlrc/errors.hpp"

namespace srlrc {

// Polynomial arithmetic over F_2, coefficients bit-packed (bit i = coefficient of x^i).
namespace gf2poly {
int degree(uint64_t p);  // -1 for the zero polynomial
uint64_t mul(uint64_t a, uint64_t b);
uint64_t mod(uint64_t a, uint64_t p);
uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p);
uint64_t gcd(uint64_t a, uint64_t b);
bool irreducible(uint64_t p);
// Lowest bit-packed irreducible polynomial of the given degree.
uint64_t lowest_irreducible(int degree);
}  // namespace gf2poly

/// One finite field F_{2^e}. Elements are bit-packed polynomial residues
/// reduced modulo the defining polynomial; the value range is [0, 2^e).
/// Fields with e <= kTableBits use log/antilog tables, larger ones fall
/// back to shift-and-xor polynomial arithmetic.
class Field {
   public:
    static constexpr int kTableBits = 20;

    explicit Field(int bits);

    int bits() const { return bits_; }
    uint64_t order() const { return order_; }  // number of elements, 2^bits
    uint64_t modulus() const { return mod_; }
    uint64_t generator() const { return gen_; }  // primitive element

    uint64_t add(uint64_t a, uint64_t b) const { return a ^ b; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        if (!has_tables_) return gf2poly::mulmod(a, b, mod_);
        if (a == 0 || b == 0) return 0;
        uint64_t s = logt_[a] + logt_[b];
        if (s >= order_ - 1) s -= order_ - 1;
        return expt_[s];
    }
    uint64_t sqr(uint64_t a) const { return mul(a, a); }
    uint64_t inv(uint64_t a) const;
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t multiplicative_order(uint64_t a) const;
    bool is_primitive(uint64_t a) const { return a != 0 && multiplicative_order(a) == order_ - 1; }

   private:
    int bits_;
    uint64_t mod_ = 0;
    uint64_t order_ = 0;
    uint64_t gen_ = 0;
    bool has_tables_ = false;
    std::vector<uint32_t> logt_;
    std::vector<uint32_t> expt_;
};

/// A set of characteristic-2 fields closed under the "subfield of the top
/// field" relation: every member's exponent divides the top exponent, and
/// every member carries an embedding into the top field, computed once by
/// finding the lowest root of its defining polynomial there. Embeddings
/// between members are composed through the top field, so composite and
/// direct embeddings agree by construction.
class FieldTower {
   public:
    /// Chain constructor: exponents strictly increasing, each dividing the
    /// next. Rejects e.g. [2,3] with NonDividingChain.
    static std::shared_ptr<const FieldTower> build(const std::vector<int>& exponent_chain);

    /// Relaxed constructor used by code profiles: deduplicates and sorts,
    /// requires only that every exponent divide the largest one.
    static std::shared_ptr<const FieldTower> for_exponents(std::vector<int> exponents);

    int field_count() const { return static_cast<int>(fields_.size()); }
    const Field& field(int id) const { return fields_[static_cast<size_t>(id)]; }
    int top() const { return field_count() - 1; }
    int find(int bits) const;  // field id by exponent, -1 if absent
    bool subfield_of(int a, int b) const { return field(b).bits() % field(a).bits() == 0; }

    uint64_t embed(uint64_t x, int from, int to) const;
    uint64_t restrict_to(uint64_t x, int from, int to) const;  // throws NotInSubfield
    std::optional<uint64_t> try_restrict(uint64_t x, int from, int to) const;

    /// sigma^times(x) where sigma(y) = y^q and q is the order of `base`.
    uint64_t frobenius(uint64_t x, int xfield, int base, int times) const;
    /// N_i(a) = sigma^{i-1}(a) ... sigma(a) a, with sigma as above. N_0 = 1.
    uint64_t norm(uint64_t a, int afield, int base, int i) const;

   private:
    FieldTower() = default;
    void init(std::vector<int> exponents);
    uint64_t embed_to_top(uint64_t x, int from) const;
    std::optional<uint64_t> restrict_from_top(uint64_t x, int to) const;

    std::vector<Field> fields_;
    std::vector<std::vector<uint64_t>> rho_pows_;  // per field: powers of its root in the top field
};

using TowerPtr = std::shared_ptr<const FieldTower>;

/// Ordered basis of an extension field over a subfield, both members of one
/// tower. Caches the F_2-linear expansion solver so that coordinate
/// expansion and reconstruction are O(e^2) bit operations.
class OrderedBasis {
   public:
    OrderedBasis(TowerPtr tower, int subfield, int extension, std::vector<uint64_t> elements);

    const TowerPtr& tower() const { return tower_; }
    int subfield() const { return sub_; }
    int extension() const { return ext_; }
    int size() const { return static_cast<int>(elems_.size()); }
    uint64_t element(int i) const { return elems_[static_cast<size_t>(i)]; }
    const std::vector<uint64_t>& elements() const { return elems_; }

    /// Coordinates of y on the basis, as subfield values. Inverse of combine.
    std::vector<uint64_t> expand(uint64_t y) const;
    uint64_t combine(std::span<const uint64_t> coords) const;

   private:
    TowerPtr tower_;
    int sub_, ext_;
    std::vector<uint64_t> elems_;
    int sub_bits_, ext_bits_;
    std::vector<uint64_t> inv_rows_;  // packed inverse of the F_2 change-of-basis matrix
};

/// {1, a, a^2, ..., a^{m-1}} where a is the residue class of x in the
/// extension field; a generates the extension over any subfield, so this is
/// always a valid basis.
OrderedBasis polynomial_basis(TowerPtr tower, int subfield, int extension);

}  // namespace srlrc
