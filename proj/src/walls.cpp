#include "chainstab/walls.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace chainstab {

Rational AffineForm::evaluate(const std::vector<Rational>& params) const {
    if (params.size() != coeffs.size())
        throw std::invalid_argument("parameter count mismatch");
    Rational v = constant;
    for (size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * params[i];
    return v;
}

bool AffineForm::is_trivial() const {
    if (constant != 0) return false;
    for (const auto& c : coeffs) {
        if (c != 0) return false;
    }
    return true;
}

AffineForm AffineForm::normalized() const {
    QVec all = coeffs;
    all.push_back(constant);
    all = normalize_primitive(all);
    AffineForm out;
    out.constant = all.back();
    all.pop_back();
    out.coeffs = std::move(all);
    return out;
}

std::string AffineForm::to_string() const {
    std::string s;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        const Rational c = coeffs[i];
        if (s.empty()) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        const Rational a = c < 0 ? Rational(-c) : c;
        if (a != 1) s += rational_to_string(a) + "*";
        s += "a" + std::to_string(i + 1);
    }
    if (constant != 0 || s.empty()) {
        const Rational c = constant;
        if (s.empty()) {
            s += rational_to_string(c);
        } else {
            s += c < 0 ? " - " : " + ";
            s += rational_to_string(c < 0 ? Rational(-c) : c);
        }
    }
    return s + " = 0";
}

AffineChargeFamily::AffineChargeFamily(std::vector<CentralCharge> b,
                                       std::vector<CentralCharge> l)
    : base(std::move(b)), linear(std::move(l)) {
    if (base.empty() || base.size() != linear.size())
        throw std::invalid_argument("family needs matching nonempty node lists");
    for (size_t j = 0; j < base.size(); ++j) {
        if (base[j].rank() != linear[j].rank())
            throw std::invalid_argument("node rank mismatch in charge family");
        for (const auto& v : linear[j].im) {
            if (v != 0)
                throw std::invalid_argument(
                    "non-affine family: parameter enters the imaginary part");
        }
    }
}

size_t AffineChargeFamily::total_rank() const {
    size_t total = 0;
    for (const auto& node : base) total += node.rank();
    return total;
}

GluedCharge AffineChargeFamily::at(const std::vector<Rational>& params) const {
    if (params.size() != base.size())
        throw std::invalid_argument("parameter count mismatch");
    std::vector<CentralCharge> nodes;
    for (size_t j = 0; j < base.size(); ++j) {
        QVec re = base[j].re;
        for (size_t i = 0; i < re.size(); ++i) re[i] += params[j] * linear[j].re[i];
        nodes.emplace_back(std::move(re), base[j].im);
    }
    return glue_charges(std::move(nodes));
}

AffineChargeFamily alpha_family_quiver(int n) {
    if (n < 1) throw std::invalid_argument("need at least one node");
    std::vector<CentralCharge> base, linear;
    for (int j = 0; j < n; ++j) {
        base.emplace_back(QVec{Rational(0)}, QVec{Rational(1)});
        linear.emplace_back(QVec{Rational(-1)}, QVec{Rational(0)});
    }
    return AffineChargeFamily(std::move(base), std::move(linear));
}

AffineChargeFamily alpha_family_chain(int n) {
    if (n < 1) throw std::invalid_argument("need at least one node");
    std::vector<CentralCharge> base, linear;
    for (int j = 0; j < n; ++j) {
        base.emplace_back(QVec{Rational(-1), Rational(0)}, QVec{Rational(0), Rational(1)});
        linear.emplace_back(QVec{Rational(0), Rational(-1)}, QVec{Rational(0), Rational(0)});
    }
    return AffineChargeFamily(std::move(base), std::move(linear));
}

namespace {

// Evaluations of a class against the family split into the constant real
// part, the per-parameter real coefficients, and the constant imaginary part.
struct SplitValue {
    Rational re0;
    QVec re_coeffs;
    Rational im;
};

SplitValue split_value(const AffineChargeFamily& fam, const LatticeClass& beta) {
    if (beta.rank() != fam.total_rank())
        throw std::invalid_argument("class rank does not match the family");
    SplitValue out;
    out.re_coeffs.assign(fam.param_count(), Rational(0));
    size_t offset = 0;
    for (size_t j = 0; j < fam.param_count(); ++j) {
        const size_t r = fam.base[j].rank();
        for (size_t i = 0; i < r; ++i) {
            const Rational x(beta.coords[offset + i]);
            out.re0 += fam.base[j].re[i] * x;
            out.im += fam.base[j].im[i] * x;
            out.re_coeffs[j] += fam.linear[j].re[i] * x;
        }
        offset += r;
    }
    return out;
}

// Phase equality of u against beta as cross(Z(u), Z(beta)) = 0; affine in the
// parameters because the imaginary parts are parameter free.
AffineForm phase_equality_form(const SplitValue& u, const SplitValue& b) {
    AffineForm eq;
    eq.constant = u.re0 * b.im - b.re0 * u.im;
    eq.coeffs.resize(u.re_coeffs.size());
    for (size_t j = 0; j < eq.coeffs.size(); ++j)
        eq.coeffs[j] = u.re_coeffs[j] * b.im - b.re_coeffs[j] * u.im;
    return eq;
}

bool meets_box(const AffineForm& eq, const ParamBox& box) {
    Rational lo = eq.constant, hi = eq.constant;
    for (size_t j = 0; j < eq.coeffs.size(); ++j) {
        const Rational a = eq.coeffs[j] * box.ranges[j].first;
        const Rational b = eq.coeffs[j] * box.ranges[j].second;
        lo += std::min(a, b);
        hi += std::max(a, b);
    }
    return lo <= 0 && 0 <= hi;
}

template <typename F>
void for_each_proper_subclass(const LatticeClass& beta, F&& fn) {
    std::vector<Integer> u(beta.rank(), 0);
    while (true) {
        bool zero = true, full = true;
        for (size_t i = 0; i < u.size(); ++i) {
            zero = zero && u[i] == 0;
            full = full && u[i] == beta.coords[i];
        }
        if (!zero && !full) fn(LatticeClass(beta.kind, beta.n, u));
        size_t i = 0;
        while (i < u.size()) {
            if (u[i] < beta.coords[i]) {
                ++u[i];
                for (size_t j = 0; j < i; ++j) u[j] = 0;
                break;
            }
            ++i;
        }
        if (i == u.size()) return;
    }
}

}  // namespace

std::vector<Wall> exact_walls(const LatticeClass& beta,
                              const AffineChargeFamily& family,
                              const ParamBox& box) {
    if (box.ranges.size() != family.param_count())
        throw std::invalid_argument("box dimension does not match the family");
    for (const auto& c : beta.coords) {
        if (c < 0) throw std::invalid_argument("class must be nonnegative");
    }
    const SplitValue vb = split_value(family, beta);
    std::map<std::pair<QVec, Rational>, std::vector<LatticeClass>> walls;
    for_each_proper_subclass(beta, [&](const LatticeClass& u) {
        const AffineForm eq = phase_equality_form(split_value(family, u), vb);
        if (eq.is_trivial()) return;
        const AffineForm norm = eq.normalized();
        if (!meets_box(norm, box)) return;
        walls[{norm.coeffs, norm.constant}].push_back(u);
    });
    std::vector<Wall> out;
    for (auto& [key, subs] : walls) {
        std::sort(subs.begin(), subs.end());
        out.push_back(Wall{AffineForm{key.first, key.second}, std::move(subs), box});
    }
    return out;
}

std::vector<IntervalSum> enumerate_semistables(const LatticeClass& beta,
                                               const GluedCharge& z) {
    std::vector<IntervalSum> out;
    for (const auto& cand : interval_sums_of_class(beta)) {
        if (is_semistable(cand.to_rep(beta.n), z).semistable) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<HNStratum> hn_stratification(const LatticeClass& beta,
                                         const GluedCharge& z) {
    std::map<std::vector<LatticeClass>, std::vector<IntervalSum>> strata;
    for (const auto& cand : interval_sums_of_class(beta)) {
        auto hn = hn_filtration(cand.to_rep(beta.n), z);
        strata[hn.type()].push_back(cand);
    }
    std::vector<HNStratum> out;
    for (auto& [type, members] : strata) {
        std::sort(members.begin(), members.end());
        out.push_back(HNStratum{type, std::move(members)});
    }
    return out;
}

namespace {

// Upper bound for (angle from a to b)/pi when the angle is in [0, pi); uses
// angle <= tan(angle) on acute sectors and pi > 3.
Rational sector_bound(const ComplexQ& a, const ComplexQ& b) {
    const Rational c = cross(a, b);
    if (c <= 0) return Rational(0);  // nonpositive angle, clamp
    const Rational d = dot(a, b);
    if (d > 0) return c / (3 * d);
    // obtuse: split off a quarter turn
    const ComplexQ rot{-a.im, a.re};
    const Rational c2 = cross(rot, b);
    const Rational d2 = dot(rot, b);  // equals c > 0
    Rational extra(0);
    if (c2 > 0 && d2 > 0) extra = c2 / (3 * d2);
    else if (c2 > 0) extra = Rational(1, 2);  // never hit: second turn is acute
    return Rational(1, 2) + extra;
}

}  // namespace

Rational phase_gap_upper(const PhaseValue& hi, const PhaseValue& lo) {
    if (hi.compare(lo) < 0) throw std::invalid_argument("gap endpoints out of order");
    if (hi.compare(lo) == 0) return Rational(0);
    const auto eh = hi.exact_rational();
    const auto el = lo.exact_rational();
    if (eh && el) return *eh - *el;
    // hi = k_h + t_h, lo = k_l + t_l with t in (0,1]; the directional piece
    // t_h - t_l is bounded through the sector bound in either order.
    Rational dir(0);  // t_h <= t_l clamps the directional piece to 0
    if (cross(lo.z, hi.z) >= 0) dir = sector_bound(lo.z, hi.z);
    return Rational(hi.k - lo.k) + dir;
}

Rational slicing_distance_estimate(const GluedCharge& sigma, const GluedCharge& tau,
                                   const std::vector<IntervalSum>& samples, int n) {
    if (samples.empty()) throw std::invalid_argument("empty sample set");
    Rational best(0);
    size_t used = 0;
    for (const auto& s : samples) {
        // only semistable pieces of the second slicing carry distance data
        if (!is_semistable(s.to_rep(n), tau).semistable) continue;
        ++used;
        const PhaseValue tau_phase = phase_of_value(tau.evaluate(s.class_of(n)));
        const auto hn = hn_filtration(s.to_rep(n), sigma);
        const PhaseValue& top = hn.factors.front().phase;
        const PhaseValue& bot = hn.factors.back().phase;
        if (top.compare(tau_phase) > 0)
            best = std::max(best, phase_gap_upper(top, tau_phase));
        if (tau_phase.compare(bot) > 0)
            best = std::max(best, phase_gap_upper(tau_phase, bot));
    }
    if (used == 0) throw std::invalid_argument("empty sample set after filtering");
    return best;
}

ChamberGrid chamber_grid(const LatticeClass& beta, const AffineChargeFamily& family,
                         const ParamBox& box, int k) {
    if (k < 1) throw std::invalid_argument("grid resolution must be positive");
    const auto walls = exact_walls(beta, family, box);
    const size_t dim = family.param_count();

    std::vector<size_t> idx(dim, 0);
    ChamberGrid grid;
    std::map<std::string, size_t> signature_ids;
    while (true) {
        std::vector<Rational> point(dim);
        for (size_t j = 0; j < dim; ++j) {
            const Rational lo = box.ranges[j].first, hi = box.ranges[j].second;
            point[j] = lo + (hi - lo) * Rational(2 * (long long)idx[j] + 1, 2 * k);
        }
        // nudge off every wall locus; verified, not assumed
        for (long long attempt = 1; attempt <= 64; ++attempt) {
            bool clean = true;
            for (const auto& w : walls)
                clean = clean && w.equation.evaluate(point) != 0;
            if (clean) break;
            if (attempt == 64) throw std::runtime_error("could not avoid wall loci");
            for (size_t j = 0; j < dim; ++j) {
                const Rational span = box.ranges[j].second - box.ranges[j].first;
                point[j] += span * Rational((long long)j + 1, 8 * k * (attempt + 1) *
                                                                 ((long long)dim + 1));
            }
        }

        auto strata = hn_stratification(beta, family.at(point));
        size_t n_ss = 0;
        std::string sig;
        for (const auto& st : strata) {
            bool semistable_stratum = st.type.size() == 1;
            if (semistable_stratum) n_ss = st.members.size();
            for (const auto& c : st.type) sig += c.to_string() + ";";
            sig += "#" + std::to_string(st.members.size()) + "|";
        }
        auto [it, fresh] = signature_ids.try_emplace(sig, grid.signatures.size());
        if (fresh) grid.signatures.push_back(strata);
        grid.rows.push_back(GridRow{std::move(point), n_ss, it->second});

        size_t j = 0;
        while (j < dim) {
            if (++idx[j] < (size_t)k) break;
            idx[j] = 0;
            ++j;
        }
        if (j == dim) break;
    }
    return grid;
}

}  // namespace chainstab
