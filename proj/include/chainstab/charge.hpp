#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainstab/lattice.hpp"

namespace chainstab {

// Rational-linear map Lambda -> C stored as two row vectors.
struct CentralCharge {
    QVec re;
    QVec im;

    CentralCharge() = default;
    CentralCharge(QVec r, QVec i);

    size_t rank() const { return re.size(); }
    ComplexQ evaluate(const std::vector<Integer>& coords) const;
    ComplexQ evaluate(const LatticeClass& beta) const;

    // Rows as a 2 x rank matrix (Re first).
    QMat as_matrix() const;
};

// Ordered list of per-node charges; evaluation sums node charges over the
// node blocks of the class.
struct GluedCharge {
    std::vector<CentralCharge> nodes;

    size_t total_rank() const;
    size_t node_count() const { return nodes.size(); }
    ComplexQ evaluate(const LatticeClass& beta) const;
    ComplexQ evaluate_node(size_t j, const LatticeClass& beta) const;

    // Flattened total charge (concatenated rows).
    CentralCharge flatten() const;
};

GluedCharge glue_charges(std::vector<CentralCharge> nodes);

// alpha-stability charges: node j sends (d, r) to -d - alpha_j r + i r.
// The quiver variant sends a dimension m at node j to (-alpha_j + i) m.
GluedCharge alpha_charge_chain(const std::vector<Rational>& alpha);
GluedCharge alpha_charge_quiver(const std::vector<Rational>& alpha);

// Slope -Re/Im, with +infinity on the real axis.
struct Slope {
    bool infinite = false;
    Rational value;

    bool operator==(const Slope& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
    bool operator<(const Slope& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return value < o.value;
    }
    std::string to_string() const { return infinite ? "inf" : rational_to_string(value); }
};

Slope slope_of_value(const ComplexQ& z);

// Exact phase phi in (k, k+1]: a nonzero direction vector normalized into the
// semi-closed upper half plane together with an integer winding shift. All
// comparisons are quadrant ranks and cross-product sign tests; arctan never
// appears.
struct PhaseValue {
    ComplexQ z;          // normalized: im > 0, or im == 0 and re < 0
    long long k = 0;     // phase lies in (k, k+1]

    // Throws unless v lies in the semi-closed upper half plane.
    static PhaseValue from_heart_value(const ComplexQ& v, long long shift = 0);
    // Any nonzero v; picks the representative with phase in (-1, 1].
    static PhaseValue from_any_value(const ComplexQ& v);

    PhaseValue plus_int(long long d) const { return {z, k + d}; }

    // phi as an exact rational when the direction is axis-aligned.
    std::optional<Rational> exact_rational() const;

    int compare(const PhaseValue& o) const;  // -1 / 0 / +1
    bool operator<(const PhaseValue& o) const { return compare(o) < 0; }
    bool operator>(const PhaseValue& o) const { return compare(o) > 0; }
    bool operator==(const PhaseValue& o) const { return compare(o) == 0; }
    bool operator<=(const PhaseValue& o) const { return compare(o) <= 0; }
    bool operator>=(const PhaseValue& o) const { return compare(o) >= 0; }

    std::string to_string() const;

    // Double approximation, only for display and test diagnostics.
    double approx() const;
};

// Phase of Z(beta); requires the value in the semi-closed upper half plane.
PhaseValue phase_of_value(const ComplexQ& v);

// Element of the universal cover of GL+(2,R): a matrix with positive
// determinant and an integer selecting the lift f with f(phi+1) = f(phi)+1.
// Values transform by the row-vector convention z' = z * T^{-1}.
struct GLtildeElement {
    QMat t;          // 2x2, det > 0
    long long k = 0;

    GLtildeElement();
    GLtildeElement(QMat m, long long kk);

    bool is_identity() const;
};

ComplexQ apply_matrix(const ComplexQ& z, const QMat& m);  // row vector times m

// The canonical lift of the direction map z -> z*m applied to a phase,
// pinned so that the image of (0,1] is the sector starting at the direction
// of (1,0)*m. Requires det(m) > 0.
PhaseValue apply_direction_lift(const QMat& m, const PhaseValue& p);

// Phase relabeling under g: phi -> lift0(T^{-1})(phi) - k.
PhaseValue relabel_phase(const GLtildeElement& g, const PhaseValue& p);

GLtildeElement gl_compose(const GLtildeElement& first, const GLtildeElement& second);
GLtildeElement gl_inverse(const GLtildeElement& g);

// A pre-stability datum: a glued charge whose values on the heart land in the
// semi-closed upper half plane, a GLtilde frame accumulated by act_gl, and
// recorded semistable classes with their phases.
struct StabilityData {
    GluedCharge base;
    GLtildeElement frame;
    std::vector<std::pair<LatticeClass, PhaseValue>> semistables;

    explicit StabilityData(GluedCharge z) : base(std::move(z)) {}

    ComplexQ effective_value(const LatticeClass& beta) const;
    // Phase in the relabeled slicing; the underlying heart is the base one.
    PhaseValue effective_phase(const LatticeClass& beta) const;
    // Phase with respect to the base charge (must land in the heart).
    PhaseValue base_phase(const LatticeClass& beta) const;

    void record_semistable(const LatticeClass& beta);
};

StabilityData act_gl(const StabilityData& sigma, const GLtildeElement& g);
// phi_* must be invertible over Z.
StabilityData act_autoequivalence(const StabilityData& sigma, const QMat& phi_star);

}  // namespace chainstab
