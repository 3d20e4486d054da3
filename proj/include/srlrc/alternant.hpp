#pragma once

#include <cstdint>
#include <vector>

#include "srlrc/mrlrc.hpp"

namespace srlrc {

/// Generator (over F_{q0^m}) of the intersection of a code over F_{q^m},
/// given by its parity check, with F_{q0^m}^N, where q = q0^s. Each parity
/// row is expanded into s rows on the power basis of F_{q^m} over F_{q0^m},
/// and the nullspace is taken over F_{q0^m}.
Matrix subextension_subcode(const Matrix& parity_check, TowerPtr tower, int subext_field);

/// Sum-rank alternant code: subextension subcode of the dual of the
/// (designed-1)-dimensional linearized RS code.
struct AlternantCode {
    TowerPtr tower;
    int q0_field = 0;      // F_{q0}
    int subext_field = 0;  // F_{q0^m}
    int base_field = 0;    // F_q, q = q0^s
    int ext_field = 0;     // F_{q^m}
    int s = 0;
    int m = 0;
    int designed = 0;  // delta*
    SumRankPartition partition;
    uint64_t gamma = 0;  // parent linearized RS primitive element
    Matrix gen;          // dim x N over F_{q0^m}

    int length() const { return partition.total(); }
    int dim() const { return static_cast<int>(gen.rows()); }
    int dimension_bound() const { return length() - s * (designed - 1); }
};

AlternantCode alternant_code(TowerPtr tower, int q0_bits, int s, int m, SumRankPartition partition, int designed);

/// Convenience overload building its own tower.
AlternantCode alternant_code(int q0_bits, int s, int m, SumRankPartition partition, int designed);

struct AlternantReport {
    int d_actual;
    int d_designed;
    int dim_actual;
    int dim_bound;
    bool distance_ok() const { return d_actual >= d_designed; }
    bool dimension_ok() const { return dim_actual >= dim_bound; }
};

/// Brute-force check of the designed distance and the Delsarte dimension
/// bound.
AlternantReport verify_bounds(const AlternantCode& code, uint64_t cap = kEnumCap);

/// Sufficient erasure-correction threshold for a global code with this
/// alternant outer: survivor ranks over F_{q0} reach N - delta* + 1.
bool alternant_threshold(const GlobalCode& global, int designed, const ErasurePattern& pattern);

}  // namespace srlrc
