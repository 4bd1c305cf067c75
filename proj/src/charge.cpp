#include "chainstab/charge.hpp"

#include <cmath>

namespace chainstab {

CentralCharge::CentralCharge(QVec r, QVec i) : re(std::move(r)), im(std::move(i)) {
    if (re.size() != im.size())
        throw std::invalid_argument("central charge rows must have equal length");
}

ComplexQ CentralCharge::evaluate(const std::vector<Integer>& coords) const {
    if (coords.size() != re.size())
        throw std::invalid_argument("central charge: class rank mismatch");
    ComplexQ z{0, 0};
    for (size_t i = 0; i < coords.size(); ++i) {
        const Rational c{coords[i]};
        z.re += re[i] * c;
        z.im += im[i] * c;
    }
    return z;
}

ComplexQ CentralCharge::evaluate(const LatticeClass& beta) const {
    return evaluate(beta.coords);
}

QMat CentralCharge::as_matrix() const {
    return QMat::from_rows({re, im});
}

size_t GluedCharge::total_rank() const {
    size_t r = 0;
    for (const auto& n : nodes) r += n.rank();
    return r;
}

ComplexQ GluedCharge::evaluate(const LatticeClass& beta) const {
    if (beta.rank() != total_rank())
        throw std::invalid_argument("glued charge: class rank mismatch");
    ComplexQ z{0, 0};
    size_t off = 0;
    for (const auto& node : nodes) {
        std::vector<Integer> block(beta.coords.begin() + off,
                                   beta.coords.begin() + off + node.rank());
        z = z + node.evaluate(block);
        off += node.rank();
    }
    return z;
}

ComplexQ GluedCharge::evaluate_node(size_t j, const LatticeClass& beta) const {
    if (beta.rank() != total_rank())
        throw std::invalid_argument("glued charge: class rank mismatch");
    size_t off = 0;
    for (size_t i = 0; i < j; ++i) off += nodes[i].rank();
    std::vector<Integer> block(beta.coords.begin() + off,
                               beta.coords.begin() + off + nodes[j].rank());
    return nodes[j].evaluate(block);
}

CentralCharge GluedCharge::flatten() const {
    QVec re, im;
    for (const auto& n : nodes) {
        re.insert(re.end(), n.re.begin(), n.re.end());
        im.insert(im.end(), n.im.begin(), n.im.end());
    }
    return CentralCharge(std::move(re), std::move(im));
}

GluedCharge glue_charges(std::vector<CentralCharge> nodes) {
    if (nodes.empty()) throw std::invalid_argument("glue_charges: empty node list");
    return GluedCharge{std::move(nodes)};
}

GluedCharge alpha_charge_chain(const std::vector<Rational>& alpha) {
    std::vector<CentralCharge> nodes;
    nodes.reserve(alpha.size());
    for (const auto& a : alpha)
        nodes.emplace_back(QVec{-1, -a}, QVec{0, 1});
    return glue_charges(std::move(nodes));
}

GluedCharge alpha_charge_quiver(const std::vector<Rational>& alpha) {
    std::vector<CentralCharge> nodes;
    nodes.reserve(alpha.size());
    for (const auto& a : alpha)
        nodes.emplace_back(QVec{-a}, QVec{1});
    return glue_charges(std::move(nodes));
}

Slope slope_of_value(const ComplexQ& z) {
    if (z.is_zero()) throw std::domain_error("zero object class");
    if (z.im == 0) return Slope{true, 0};
    return Slope{false, -z.re / z.im};
}

namespace {

bool in_semiclosed_upper(const ComplexQ& v) {
    return v.im > 0 || (v.im == 0 && v.re < 0);
}

// Rank of the base phase within (0, 1]: first quadrant < positive imaginary
// axis < second quadrant < negative real axis.
int quadrant_rank(const ComplexQ& z) {
    if (z.im == 0) return 3;
    if (z.re == 0) return 1;
    return z.re > 0 ? 0 : 2;
}

}  // namespace

PhaseValue PhaseValue::from_heart_value(const ComplexQ& v, long long shift) {
    if (v.is_zero()) throw std::domain_error("phase of zero value");
    if (!in_semiclosed_upper(v)) throw std::domain_error("not a heart class under Z");
    return PhaseValue{v, shift};
}

PhaseValue PhaseValue::from_any_value(const ComplexQ& v) {
    if (v.is_zero()) throw std::domain_error("phase of zero value");
    if (in_semiclosed_upper(v)) return PhaseValue{v, 0};
    return PhaseValue{-v, -1};
}

std::optional<Rational> PhaseValue::exact_rational() const {
    if (z.im == 0) return Rational(1 + k);
    if (z.re == 0) return Rational(1, 2) + k;
    if (z.re == z.im) return Rational(1, 4) + k;
    if (z.re == -z.im) return Rational(3, 4) + k;
    return std::nullopt;
}

int PhaseValue::compare(const PhaseValue& o) const {
    if (k != o.k) return k < o.k ? -1 : 1;
    const int ra = quadrant_rank(z), rb = quadrant_rank(o.z);
    if (ra != rb) return ra < rb ? -1 : 1;
    if (ra == 1 || ra == 3) return 0;
    const Rational c = cross(z, o.z);
    if (c == 0) return 0;
    return c > 0 ? -1 : 1;
}

std::string PhaseValue::to_string() const {
    if (auto q = exact_rational()) return rational_to_string(*q);
    return "arg(" + complex_to_string(z) + ")/pi+" + std::to_string(k);
}

double PhaseValue::approx() const {
    const double re = z.re.convert_to<double>();
    const double im = z.im.convert_to<double>();
    double phi = std::atan2(im, re) / 3.14159265358979323846;
    if (phi <= 0) phi += 2;  // normalized vector has base phase in (0,1]
    return phi + (double)k;
}

PhaseValue phase_of_value(const ComplexQ& v) { return PhaseValue::from_heart_value(v); }

GLtildeElement::GLtildeElement() : t(QMat::identity(2)) {}

GLtildeElement::GLtildeElement(QMat m, long long kk) : t(std::move(m)), k(kk) {
    if (t.rows() != 2 || t.cols() != 2)
        throw std::invalid_argument("GLtilde matrix must be 2x2");
    if (t.det() <= 0) throw std::invalid_argument("GLtilde matrix must have det > 0");
}

bool GLtildeElement::is_identity() const {
    return k == 0 && t == QMat::identity(2);
}

ComplexQ apply_matrix(const ComplexQ& z, const QMat& m) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("need a 2x2 matrix");
    return ComplexQ{z.re * m.at(0, 0) + z.im * m.at(1, 0),
                    z.re * m.at(0, 1) + z.im * m.at(1, 1)};
}

namespace {

// Angle of an arbitrary nonzero vector as a PhaseValue in [0, 2): the
// positive real axis is represented as the negative real axis shifted by -1.
PhaseValue raw_angle(const ComplexQ& v) {
    if (v.is_zero()) throw std::domain_error("angle of zero vector");
    if (in_semiclosed_upper(v)) return PhaseValue{v, 0};
    if (v.im == 0)  // positive real axis
        return PhaseValue{ComplexQ{-v.re, 0}, -1};
    return PhaseValue{-v, 1};
}

}  // namespace

PhaseValue apply_direction_lift(const QMat& m, const PhaseValue& p) {
    if (m.det() <= 0)
        throw std::invalid_argument("direction lift needs an orientation-preserving matrix");
    const ComplexQ w = apply_matrix(p.z, m);
    // Window (theta0, theta0 + 1]: the image of the base sector (0, 1], where
    // theta0 is the angle of the image of the positive real axis.
    const PhaseValue theta0 = raw_angle(ComplexQ{m.at(0, 0), m.at(0, 1)});
    const PhaseValue theta1 = theta0.plus_int(1);
    const PhaseValue wa = raw_angle(w);
    for (long long d : {-2LL, 0LL, 2LL}) {
        const PhaseValue c = wa.plus_int(d);
        if (theta0 < c && c <= theta1) return c.plus_int(p.k);
    }
    throw std::logic_error("direction lift: no candidate in window");
}

PhaseValue relabel_phase(const GLtildeElement& g, const PhaseValue& p) {
    return apply_direction_lift(g.t.inverse(), p).plus_int(-g.k);
}

GLtildeElement gl_compose(const GLtildeElement& first, const GLtildeElement& second) {
    QMat tc = second.t * first.t;  // z*T1^{-1}*T2^{-1} = z*(T2*T1)^{-1}
    // Integer defect between the composed lift and the canonical lift of the
    // product, evaluated at phase 1 (direction (-1, 0)).
    const PhaseValue one{ComplexQ{-1, 0}, 0};
    const PhaseValue via_pair =
        apply_direction_lift(second.t.inverse(), apply_direction_lift(first.t.inverse(), one));
    const PhaseValue via_prod = apply_direction_lift(tc.inverse(), one);
    if (via_pair.z != via_prod.z)
        throw std::logic_error("gl_compose: lift defect is not an integer");
    const long long c0 = via_pair.k - via_prod.k;
    return GLtildeElement(std::move(tc), first.k + second.k - c0);
}

GLtildeElement gl_inverse(const GLtildeElement& g) {
    QMat ti = g.t.inverse();
    const PhaseValue one{ComplexQ{-1, 0}, 0};
    const PhaseValue round_trip = apply_direction_lift(g.t, apply_direction_lift(ti, one));
    if (round_trip.z != one.z)
        throw std::logic_error("gl_inverse: round trip is not an integer shift");
    const long long c0 = round_trip.k;
    return GLtildeElement(std::move(ti), c0 - g.k);
}

ComplexQ StabilityData::effective_value(const LatticeClass& beta) const {
    return apply_matrix(base.evaluate(beta), frame.t.inverse());
}

PhaseValue StabilityData::base_phase(const LatticeClass& beta) const {
    return phase_of_value(base.evaluate(beta));
}

PhaseValue StabilityData::effective_phase(const LatticeClass& beta) const {
    return relabel_phase(frame, base_phase(beta));
}

void StabilityData::record_semistable(const LatticeClass& beta) {
    semistables.emplace_back(beta, effective_phase(beta));
}

StabilityData act_gl(const StabilityData& sigma, const GLtildeElement& g) {
    StabilityData out = sigma;
    out.frame = gl_compose(sigma.frame, g);
    // Semistable objects are preserved; only the phase labels move.
    for (auto& [cls, phi] : out.semistables) phi = relabel_phase(g, phi);
    return out;
}

StabilityData act_autoequivalence(const StabilityData& sigma, const QMat& phi_star) {
    const Rational d = phi_star.det();
    if (d != 1 && d != -1)
        throw std::invalid_argument("autoequivalence matrix must be invertible over Z");
    const QMat inv = phi_star.inverse();
    StabilityData out = sigma;
    size_t off = 0;
    // New rows are old rows composed with phi_*^{-1}; the node block sizes of
    // the glued charge are kept.
    const CentralCharge flat = sigma.base.flatten();
    const QVec re = inv.transpose().apply(flat.re);
    const QVec im = inv.transpose().apply(flat.im);
    for (auto& node : out.base.nodes) {
        const size_t r = node.rank();
        node.re.assign(re.begin() + off, re.begin() + off + r);
        node.im.assign(im.begin() + off, im.begin() + off + r);
        off += r;
    }
    // A sigma-semistable class beta becomes the phi_*(sigma)-semistable class
    // phi_*(beta) of the same phase.
    for (auto& [cls, phi] : out.semistables) {
        QVec v(cls.coords.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = Rational(cls.coords[i]);
        const QVec w = phi_star.apply(v);
        for (size_t i = 0; i < v.size(); ++i) {
            using boost::multiprecision::denominator;
            using boost::multiprecision::numerator;
            if (denominator(w[i]) != 1)
                throw std::logic_error("autoequivalence image left the lattice");
            cls.coords[i] = numerator(w[i]);
        }
    }
    return out;
}

}  // namespace chainstab
