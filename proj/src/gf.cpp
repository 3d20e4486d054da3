#include "srlrc/gf.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace srlrc {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonDividingChain: return "NonDividingChain";
        case Errc::NoIrreducibleFound: return "NoIrreducibleFound";
        case Errc::NotInSubfield: return "NotInSubfield";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::TooLargeToEnumerate: return "TooLargeToEnumerate";
        case Errc::NotInvertibleBlock: return "NotInvertibleBlock";
        case Errc::BadDistribution: return "BadDistribution";
        case Errc::InsufficientRank: return "InsufficientRank";
        case Errc::FieldTooSmall: return "FieldTooSmall";
        case Errc::NotFullRank: return "NotFullRank";
        case Errc::TooLarge: return "TooLarge";
        case Errc::UnrepairableLocally: return "UnrepairableLocally";
        case Errc::ProfileInvalid: return "ProfileInvalid";
        case Errc::BadPartitionSum: return "BadPartitionSum";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::LocalityOutOfRange: return "LocalityOutOfRange";
        case Errc::WouldViolateKBound: return "WouldViolateKBound";
        case Errc::KOutOfRange: return "KOutOfRange";
        case Errc::GroupCountOutOfRange: return "GroupCountOutOfRange";
        case Errc::ParseError: return "ParseError";
        case Errc::NotAPowerChain: return "NotAPowerChain";
        case Errc::PreconditionNotSorted: return "PreconditionNotSorted";
        case Errc::Inconsistent: return "Inconsistent";
        case Errc::Singular: return "Singular";
        case Errc::IoError: return "IoError";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

namespace gf2poly {

int degree(uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

uint64_t mul(uint64_t a, uint64_t b) {
    uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

uint64_t mod(uint64_t a, uint64_t p) {
    int dp = degree(p);
    int da;
    while ((da = degree(a)) >= dp) a ^= p << (da - dp);
    return a;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) { return mod(mul(a, b), p); }

uint64_t gcd(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t c = mod(a, b);
        a = b;
        b = c;
    }
    return a;
}

bool irreducible(uint64_t p) {
    int d = degree(p);
    if (d < 1) return false;
    // p is irreducible iff it has no irreducible factor of degree <= d/2;
    // x^{2^i} - x is the product of all irreducibles of degree dividing i.
    uint64_t t = 2;  // x
    for (int i = 1; i <= d / 2; ++i) {
        t = mulmod(t, t, p);
        if (gcd(t ^ 2ull, p) != 1) return false;
    }
    return true;
}

uint64_t lowest_irreducible(int deg) {
    for (uint64_t p = (1ull << deg) + 1, end = 1ull << (deg + 1); p < end; p += 2)
        if (irreducible(p)) return p;
    fail(Errc::NoIrreducibleFound, "no irreducible polynomial of degree " + std::to_string(deg));
}

}  // namespace gf2poly

namespace {

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> ps;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

uint64_t polypow(uint64_t a, uint64_t e, uint64_t mod) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = gf2poly::mulmod(r, a, mod);
        a = gf2poly::mulmod(a, a, mod);
        e >>= 1;
    }
    return r;
}

// Gaussian elimination over F_2 with bit-packed rows. Solves A c = y where
// column j of A is cols[j] (bits over equations). Up to 63 unknowns.
std::optional<uint64_t> f2_solve(std::span<const uint64_t> cols, uint64_t y, int equations) {
    const int n = static_cast<int>(cols.size());
    assert(n < 64);
    std::vector<uint64_t> rows(static_cast<size_t>(equations), 0);  // mask over unknowns | rhs bit at n
    for (int r = 0; r < equations; ++r) {
        uint64_t m = 0;
        for (int j = 0; j < n; ++j)
            if ((cols[static_cast<size_t>(j)] >> r) & 1) m |= 1ull << j;
        if ((y >> r) & 1) m |= 1ull << n;
        rows[static_cast<size_t>(r)] = m;
    }
    uint64_t sol = 0;
    int row = 0;
    std::vector<int> pivot_of(static_cast<size_t>(n), -1);
    for (int col = 0; col < n && row < equations; ++col) {
        int pr = -1;
        for (int r = row; r < equations; ++r)
            if ((rows[static_cast<size_t>(r)] >> col) & 1) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(rows[static_cast<size_t>(pr)], rows[static_cast<size_t>(row)]);
        for (int r = 0; r < equations; ++r)
            if (r != row && ((rows[static_cast<size_t>(r)] >> col) & 1)) rows[static_cast<size_t>(r)] ^= rows[static_cast<size_t>(row)];
        pivot_of[static_cast<size_t>(col)] = row;
        ++row;
    }
    for (int r = row; r < equations; ++r)
        if (rows[static_cast<size_t>(r)] >> n) return std::nullopt;  // 0 = 1
    for (int col = 0; col < n; ++col)
        if (pivot_of[static_cast<size_t>(col)] >= 0 && (rows[static_cast<size_t>(pivot_of[static_cast<size_t>(col)])] >> n))
            sol |= 1ull << col;
    return sol;
}

}  // namespace

Field::Field(int bits) : bits_(bits) {
    if (bits < 1 || bits > 32) fail(Errc::ProfileInvalid, "field exponent out of range: " + std::to_string(bits));
    mod_ = gf2poly::lowest_irreducible(bits);
    order_ = 1ull << bits;

    // Primitive element: ascending search over residues.
    const uint64_t go = order_ - 1;
    const auto primes = prime_factors(go);
    for (uint64_t v = 1; v < order_; ++v) {
        bool ok = true;
        for (uint64_t p : primes)
            if (polypow(v, go / p, mod_) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            gen_ = v;
            break;
        }
    }
    assert(gen_ != 0);

    if (bits <= kTableBits) {
        has_tables_ = true;
        expt_.resize(go ? go : 1);
        logt_.assign(order_, 0);
        uint64_t e = 1;
        for (uint64_t i = 0; i < go; ++i) {
            expt_[i] = static_cast<uint32_t>(e);
            logt_[e] = static_cast<uint32_t>(i);
            e = gf2poly::mulmod(e, gen_, mod_);
        }
        if (go) assert(e == 1);
        if (go == 0) expt_[0] = 1;  // F_2: the only nonzero element
    }
}

uint64_t Field::inv(uint64_t a) const {
    if (a == 0) fail(Errc::Singular, "inverse of zero");
    if (has_tables_) {
        uint64_t l = logt_[a];
        return expt_[l ? order_ - 1 - l : 0];
    }
    return pow(a, order_ - 2);
}

uint64_t Field::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t Field::multiplicative_order(uint64_t a) const {
    if (a == 0) fail(Errc::Singular, "order of zero");
    uint64_t d = order_ - 1;
    for (uint64_t p : prime_factors(order_ - 1))
        while (d % p == 0 && pow(a, d / p) == 1) d /= p;
    return d;
}

std::shared_ptr<const FieldTower> FieldTower::build(const std::vector<int>& exponent_chain) {
    if (exponent_chain.empty()) fail(Errc::NonDividingChain, "empty exponent chain");
    for (size_t i = 0; i + 1 < exponent_chain.size(); ++i) {
        if (exponent_chain[i + 1] <= exponent_chain[i])
            fail(Errc::NonDividingChain, "chain not strictly increasing");
        if (exponent_chain[i + 1] % exponent_chain[i] != 0)
            fail(Errc::NonDividingChain, std::to_string(exponent_chain[i]) + " does not divide " +
                                              std::to_string(exponent_chain[i + 1]));
    }
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->init(exponent_chain);
    return t;
}

std::shared_ptr<const FieldTower> FieldTower::for_exponents(std::vector<int> exponents) {
    if (exponents.empty()) fail(Errc::NonDividingChain, "empty exponent set");
    std::sort(exponents.begin(), exponents.end());
    exponents.erase(std::unique(exponents.begin(), exponents.end()), exponents.end());
    for (int e : exponents)
        if (exponents.back() % e != 0)
            fail(Errc::NonDividingChain,
                 std::to_string(e) + " does not divide top exponent " + std::to_string(exponents.back()));
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->init(std::move(exponents));
    return t;
}

void FieldTower::init(std::vector<int> exponents) {
    fields_.reserve(exponents.size());
    for (int e : exponents) fields_.emplace_back(e);
    rho_pows_.resize(fields_.size());

    const Field& T = fields_.back();
    for (size_t j = 0; j < fields_.size(); ++j) {
        const Field& F = fields_[j];
        uint64_t rho = 0;
        if (j + 1 == fields_.size()) {
            rho = 2 % T.order();  // residue of x; identity embedding
        } else {
            // Lowest root of F's defining polynomial in the top field.
            for (uint64_t v = 1; v < T.order(); ++v) {
                uint64_t acc = 0, pw = 1;
                uint64_t m = F.modulus();
                for (int i = 0; m; ++i, m >>= 1, pw = T.mul(pw, v))
                    if (m & 1) acc ^= pw;
                if (acc == 0) {
                    rho = v;
                    break;
                }
            }
            if (rho == 0) fail(Errc::Internal, "no root of subfield modulus in top field");
        }
        auto& pows = rho_pows_[j];
        pows.resize(static_cast<size_t>(F.bits()));
        uint64_t pw = 1;
        for (int i = 0; i < F.bits(); ++i) {
            pows[static_cast<size_t>(i)] = pw;
            pw = T.mul(pw, rho);
        }
    }

    // Homomorphism spot-check on the generator of each member.
    for (size_t j = 0; j + 1 < fields_.size(); ++j) {
        const Field& F = fields_[j];
        uint64_t g = F.generator();
        uint64_t eg = embed_to_top(g, static_cast<int>(j));
        if (embed_to_top(1, static_cast<int>(j)) != 1 ||
            embed_to_top(F.mul(g, g), static_cast<int>(j)) != T.mul(eg, eg))
            fail(Errc::Internal, "embedding is not a ring homomorphism");
    }
}

int FieldTower::find(int bits) const {
    for (size_t i = 0; i < fields_.size(); ++i)
        if (fields_[i].bits() == bits) return static_cast<int>(i);
    return -1;
}

uint64_t FieldTower::embed_to_top(uint64_t x, int from) const {
    const auto& pows = rho_pows_[static_cast<size_t>(from)];
    uint64_t r = 0;
    for (size_t i = 0; x; ++i, x >>= 1)
        if (x & 1) r ^= pows[i];
    return r;
}

std::optional<uint64_t> FieldTower::restrict_from_top(uint64_t x, int to) const {
    if (to == top()) return x;
    return f2_solve(rho_pows_[static_cast<size_t>(to)], x, fields_.back().bits());
}

uint64_t FieldTower::embed(uint64_t x, int from, int to) const {
    if (from == to) return x;
    if (!subfield_of(from, to)) fail(Errc::NotInSubfield, "embed: source is not a subfield of target");
    uint64_t lifted = embed_to_top(x, from);
    auto r = restrict_from_top(lifted, to);
    if (!r) fail(Errc::Internal, "embed: image escaped target subfield");
    return *r;
}

std::optional<uint64_t> FieldTower::try_restrict(uint64_t x, int from, int to) const {
    if (from == to) return x;
    if (!subfield_of(to, from)) fail(Errc::NotInSubfield, "restrict: target is not a subfield of source");
    return restrict_from_top(embed_to_top(x, from), to);
}

uint64_t FieldTower::restrict_to(uint64_t x, int from, int to) const {
    auto r = try_restrict(x, from, to);
    if (!r) fail(Errc::NotInSubfield, "element not in subfield image");
    return *r;
}

uint64_t FieldTower::frobenius(uint64_t x, int xfield, int base, int times) const {
    if (!subfield_of(base, xfield)) fail(Errc::NotInSubfield, "frobenius: base is not a subfield");
    const Field& F = field(xfield);
    int xb = F.bits();
    long long total = static_cast<long long>(field(base).bits()) * times;
    total %= xb;
    if (total < 0) total += xb;
    for (long long i = 0; i < total; ++i) x = F.mul(x, x);
    return x;
}

uint64_t FieldTower::norm(uint64_t a, int afield, int base, int i) const {
    const Field& F = field(afield);
    uint64_t r = 1;
    for (int j = 0; j < i; ++j) r = F.mul(frobenius(r, afield, base, 1), a);
    return r;
}

OrderedBasis::OrderedBasis(TowerPtr tower, int subfield, int extension, std::vector<uint64_t> elements)
    : tower_(std::move(tower)), sub_(subfield), ext_(extension), elems_(std::move(elements)) {
    const Field& S = tower_->field(sub_);
    const Field& E = tower_->field(ext_);
    sub_bits_ = S.bits();
    ext_bits_ = E.bits();
    if (!tower_->subfield_of(sub_, ext_)) fail(Errc::NotInSubfield, "basis subfield does not embed");
    if (static_cast<int>(elems_.size()) * sub_bits_ != ext_bits_)
        fail(Errc::DimensionMismatch, "basis size does not match extension degree");

    // Change-of-basis matrix over F_2: column (i, b) = elems_[i] * embed(2^b).
    const int n = ext_bits_;
    std::vector<uint64_t> rows(static_cast<size_t>(n));  // [A | I] packed: low n bits A, high n bits I
    for (int r = 0; r < n; ++r) {
        uint64_t m = 0;
        for (int i = 0; i < static_cast<int>(elems_.size()); ++i)
            for (int b = 0; b < sub_bits_; ++b) {
                uint64_t col = E.mul(elems_[static_cast<size_t>(i)], tower_->embed(1ull << b, sub_, ext_));
                if ((col >> r) & 1) m |= 1ull << (i * sub_bits_ + b);
            }
        rows[static_cast<size_t>(r)] = m | (1ull << (n + r));
    }
    int row = 0;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int r = row; r < n; ++r)
            if ((rows[static_cast<size_t>(r)] >> col) & 1) {
                pr = r;
                break;
            }
        if (pr < 0) fail(Errc::NotFullRank, "basis elements are linearly dependent");
        std::swap(rows[static_cast<size_t>(pr)], rows[static_cast<size_t>(row)]);
        for (int r = 0; r < n; ++r)
            if (r != row && ((rows[static_cast<size_t>(r)] >> col) & 1)) rows[static_cast<size_t>(r)] ^= rows[static_cast<size_t>(row)];
        ++row;
    }
    inv_rows_.resize(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) inv_rows_[static_cast<size_t>(t)] = rows[static_cast<size_t>(t)] >> n;
}

std::vector<uint64_t> OrderedBasis::expand(uint64_t y) const {
    std::vector<uint64_t> coords(elems_.size(), 0);
    for (int t = 0; t < ext_bits_; ++t)
        if (std::popcount(inv_rows_[static_cast<size_t>(t)] & y) & 1)
            coords[static_cast<size_t>(t / sub_bits_)] |= 1ull << (t % sub_bits_);
    return coords;
}

uint64_t OrderedBasis::combine(std::span<const uint64_t> coords) const {
    if (coords.size() != elems_.size()) fail(Errc::LengthMismatch, "coordinate count != basis size");
    const Field& E = tower_->field(ext_);
    uint64_t y = 0;
    for (size_t i = 0; i < elems_.size(); ++i)
        y ^= E.mul(elems_[i], tower_->embed(coords[i], sub_, ext_));
    return y;
}

OrderedBasis polynomial_basis(TowerPtr tower, int subfield, int extension) {
    const Field& S = tower->field(subfield);
    const Field& E = tower->field(extension);
    if (E.bits() % S.bits() != 0) fail(Errc::NotInSubfield, "extension degree is not integral");
    int m = E.bits() / S.bits();
    std::vector<uint64_t> elems(static_cast<size_t>(m));
    uint64_t alpha = 2 % E.order();  // residue of x, generates the extension over any subfield
    uint64_t p = 1;
    for (int i = 0; i < m; ++i) {
        elems[static_cast<size_t>(i)] = p;
        p = E.mul(p, alpha);
    }
    return OrderedBasis(std::move(tower), subfield, extension, std::move(elems));
}

}  // namespace srlrc
