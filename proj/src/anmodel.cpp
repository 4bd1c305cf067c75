#include "chainstab/anmodel.hpp"

#include <algorithm>
#include <set>

namespace chainstab {

ChainRep::ChainRep(std::vector<Integer> d, std::vector<QMat> m)
    : n((int)d.size()), dims(std::move(d)), maps(std::move(m)) {
    if (n < 1) throw std::invalid_argument("chain rep needs at least one node");
    if ((int)maps.size() != n - 1)
        throw std::invalid_argument("chain rep needs n-1 maps");
    for (int i = 0; i < n; ++i)
        if (dims[i] < 0) throw std::invalid_argument("negative dimension");
    for (int i = 0; i + 1 < n; ++i) {
        const size_t rows = (size_t)dims[i + 1].convert_to<long long>();
        const size_t cols = (size_t)dims[i].convert_to<long long>();
        if (maps[i].rows() != rows || maps[i].cols() != cols)
            throw std::invalid_argument("map " + std::to_string(i + 1) +
                                        " has wrong shape");
    }
    ranks_.assign((size_t)n * (size_t)n, Integer(0));
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b)
            ranks_[(size_t)(a - 1) * (size_t)n + (size_t)(b - 1)] =
                a == b ? dims[(size_t)a - 1] : Integer(composite(a, b).rank());
}

Integer ChainRep::composite_rank(int a, int b) const {
    if (a < 1 || b > n || a > b)
        throw std::invalid_argument("composite_rank: bad node range");
    if (ranks_.empty()) return Integer(composite(a, b).rank());
    return ranks_[(size_t)(a - 1) * (size_t)n + (size_t)(b - 1)];
}

bool ChainRep::is_zero() const {
    for (const auto& d : dims)
        if (d != 0) return false;
    return true;
}

QMat ChainRep::composite(int a, int b) const {
    if (a < 1 || b > n || a > b) throw std::invalid_argument("composite: bad node range");
    const size_t da = (size_t)dims[a - 1].convert_to<long long>();
    QMat m = QMat::identity(da);
    for (int i = a; i < b; ++i) m = maps[i - 1] * m;
    return m;
}

IntervalSum IntervalSum::of(std::vector<Interval> t) {
    std::map<std::tuple<int, int, long long>, Integer> acc;
    for (const auto& iv : t) {
        if (iv.a < 1 || iv.b < iv.a) throw std::invalid_argument("bad interval endpoints");
        if (iv.mult < 0) throw std::invalid_argument("negative multiplicity");
        if (iv.mult == 0) continue;
        acc[iv.key()] += iv.mult;
    }
    IntervalSum s;
    for (const auto& [key, mult] : acc)
        s.terms.push_back(Interval{std::get<0>(key), std::get<1>(key), std::get<2>(key), mult});
    return s;
}

int IntervalSum::node_count() const {
    int n = 0;
    for (const auto& t : terms) n = std::max(n, t.b);
    return n;
}

LatticeClass IntervalSum::class_of(int n) const {
    std::vector<Integer> dims((size_t)n, 0);
    for (const auto& t : terms) {
        if (t.b > n) throw std::invalid_argument("interval exceeds node count");
        const Integer signed_mult = (t.shift % 2 == 0) ? t.mult : -t.mult;
        for (int j = t.a; j <= t.b; ++j) dims[(size_t)j - 1] += signed_mult;
    }
    return quiver_class(std::move(dims));
}

bool IntervalSum::all_shift_zero() const {
    return std::all_of(terms.begin(), terms.end(),
                       [](const Interval& t) { return t.shift == 0; });
}

ChainRep IntervalSum::to_rep(int n) const {
    if (!all_shift_zero())
        throw std::invalid_argument("to_rep needs a shift-0 interval sum");
    // Instance list: one slot per multiplicity unit.
    std::vector<std::pair<int, int>> inst;
    for (const auto& t : terms) {
        const long long m = t.mult.convert_to<long long>();
        for (long long i = 0; i < m; ++i) inst.emplace_back(t.a, t.b);
    }
    std::vector<Integer> dims((size_t)n, 0);
    std::vector<std::vector<size_t>> at_node((size_t)n);
    for (size_t i = 0; i < inst.size(); ++i)
        for (int j = inst[i].first; j <= inst[i].second; ++j) {
            at_node[(size_t)j - 1].push_back(i);
            dims[(size_t)j - 1] += 1;
        }
    std::vector<QMat> maps;
    for (int j = 1; j < n; ++j) {
        const auto& src = at_node[(size_t)j - 1];
        const auto& dst = at_node[(size_t)j];
        QMat m(dst.size(), src.size());
        for (size_t c = 0; c < src.size(); ++c) {
            const auto it = std::find(dst.begin(), dst.end(), src[c]);
            if (it != dst.end()) m.at((size_t)(it - dst.begin()), c) = 1;
        }
        maps.push_back(std::move(m));
    }
    return ChainRep(std::move(dims), std::move(maps));
}

IntervalSum IntervalSum::operator+(const IntervalSum& o) const {
    std::vector<Interval> all = terms;
    all.insert(all.end(), o.terms.begin(), o.terms.end());
    return IntervalSum::of(std::move(all));
}

bool IntervalSum::operator<(const IntervalSum& o) const {
    return std::lexicographical_compare(
        terms.begin(), terms.end(), o.terms.begin(), o.terms.end(),
        [](const Interval& x, const Interval& y) {
            return std::tuple{x.a, x.b, x.shift, x.mult} <
                   std::tuple{y.a, y.b, y.shift, y.mult};
        });
}

std::string IntervalSum::to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) s += " + ";
        const auto& t = terms[i];
        s += "M[" + std::to_string(t.a) + "," + std::to_string(t.b) + "]";
        if (t.shift != 0) s += "[" + std::to_string(t.shift) + "]";
        if (t.mult != 1) s += "^" + t.mult.str();
    }
    return s;
}

IntervalSum decompose(const ChainRep& rep) {
    const int n = rep.n;
    // r[i][j] = rank of the composite i -> j (1-based); boundary terms are 0.
    auto r = [&](int i, int j) -> Integer {
        if (i < 1 || j > n || i > j) return 0;
        return rep.composite_rank(i, j);
    };
    std::vector<Interval> terms;
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            const Integer mult = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1);
            if (mult < 0) throw std::logic_error("negative interval multiplicity");
            if (mult > 0) terms.push_back(Interval{a, b, 0, mult});
        }
    return IntervalSum::of(std::move(terms));
}

Rational euler_form(const LatticeClass& u, const LatticeClass& v) {
    if (u.kind != LatticeKind::quiver || v.kind != LatticeKind::quiver || u.n != v.n)
        throw std::invalid_argument("euler form expects quiver classes of equal length");
    Rational chi = 0;
    for (int i = 0; i < u.n; ++i) {
        chi += Rational(u.coords[(size_t)i]) * Rational(v.coords[(size_t)i]);
        if (i + 1 < u.n)
            chi -= Rational(u.coords[(size_t)i]) * Rational(v.coords[(size_t)i + 1]);
    }
    return chi;
}

namespace {

// hom(M[a,b], M[c,d]) in the abelian category: 1 iff c <= a <= d <= b.
Integer interval_hom(const Interval& x, const Interval& y) {
    return (y.a <= x.a && x.a <= y.b && y.b <= x.b) ? Integer(x.mult * y.mult)
                                                    : Integer(0);
}

Integer interval_ext1(const Interval& x, const Interval& y) {
    const int n = std::max(x.b, y.b);
    const Rational chi =
        euler_form(IntervalSum::of({Interval{x.a, x.b, 0, x.mult}}).class_of(n),
                   IntervalSum::of({Interval{y.a, y.b, 0, y.mult}}).class_of(n));
    const Rational e = Rational(interval_hom(x, y)) - chi;
    return boost::multiprecision::numerator(e);
}

}  // namespace

HomExt hom_ext(const IntervalSum& x, const IntervalSum& y) {
    HomExt he{0, 0};
    for (const auto& tx : x.terms)
        for (const auto& ty : y.terms) {
            const long long d = ty.shift - tx.shift;
            // Hom(X[s1], Y[s2]) in degree q is Ext^{q + s2 - s1}(X, Y); the
            // category is hereditary so only Ext^0 and Ext^1 survive.
            if (d == 0) {
                he.hom += interval_hom(tx, ty);
                he.ext1 += interval_ext1(tx, ty);
            } else if (d == 1) {
                he.hom += interval_ext1(tx, ty);
            } else if (d == -1) {
                he.ext1 += interval_hom(tx, ty);
            }
        }
    return he;
}

Integer hom_dim(const IntervalSum& x, const IntervalSum& y) { return hom_ext(x, y).hom; }

bool subclass_feasible(const ChainRep& rep, const LatticeClass& u) {
    if (u.kind != LatticeKind::quiver || u.n != rep.n)
        throw std::invalid_argument("subclass has wrong shape");
    for (int i = 0; i < rep.n; ++i)
        if (u.coords[(size_t)i] < 0 || u.coords[(size_t)i] > rep.dims[(size_t)i])
            throw std::invalid_argument("subclass out of range");
    for (int i = 1; i <= rep.n; ++i)
        for (int j = i + 1; j <= rep.n; ++j) {
            const Integer ker =
                rep.dims[(size_t)i - 1] - rep.composite_rank(i, j);
            if (u.coords[(size_t)i - 1] > u.coords[(size_t)j - 1] + ker) return false;
        }
    return true;
}

std::optional<SubQuotient> interval_subobject(const IntervalSum& obj, int n,
                                              const LatticeClass& u) {
    if (!obj.all_shift_zero())
        throw std::invalid_argument("interval_subobject needs a shift-0 sum");
    struct Inst {
        int a, b;
        int k;  // current left endpoint of the selected suffix [k, b]
    };
    std::vector<Inst> inst;
    for (const auto& t : obj.terms) {
        const long long m = t.mult.convert_to<long long>();
        for (long long i = 0; i < m; ++i) inst.push_back(Inst{t.a, t.b, t.b + 1});
    }
    // Right-to-left: at node j we may start covering with instances ending at
    // j and continue instances already covering j+1. Preferring small left
    // endpoints keeps the most room at the remaining nodes.
    for (int j = n; j >= 1; --j) {
        std::vector<size_t> cand;
        for (size_t i = 0; i < inst.size(); ++i)
            if (inst[i].a <= j && j <= inst[i].b && inst[i].k == j + 1)
                cand.push_back(i);
        std::sort(cand.begin(), cand.end(),
                  [&](size_t x, size_t y) { return inst[x].a < inst[y].a; });
        const Integer need = u.coords[(size_t)j - 1];
        if (need > (long long)cand.size()) return std::nullopt;
        const long long take = need.convert_to<long long>();
        for (long long i = 0; i < take; ++i) inst[cand[(size_t)i]].k = j;
    }
    std::vector<Interval> sub, quot;
    for (const auto& it : inst) {
        if (it.k <= it.b) sub.push_back(Interval{it.k, it.b, 0, 1});
        if (it.k > it.a) quot.push_back(Interval{it.a, std::min(it.k - 1, it.b), 0, 1});
    }
    SubQuotient sq{IntervalSum::of(std::move(sub)), IntervalSum::of(std::move(quot))};
    if (!(sq.sub.class_of(n) == u)) return std::nullopt;
    return sq;
}

namespace {

// Visits every u with 0 <= u <= dims coordinatewise.
void for_each_subclass(const std::vector<Integer>& dims,
                       const std::function<void(const std::vector<Integer>&)>& fn) {
    std::vector<Integer> u(dims.size(), 0);
    while (true) {
        fn(u);
        size_t i = 0;
        while (i < u.size()) {
            if (u[i] < dims[i]) {
                ++u[i];
                for (size_t j = 0; j < i; ++j) u[j] = 0;
                break;
            }
            ++i;
        }
        if (i == u.size()) return;
    }
}

bool is_proper_nonzero(const std::vector<Integer>& u, const std::vector<Integer>& dims) {
    bool zero = true, full = true;
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i] != 0) zero = false;
        if (u[i] != dims[i]) full = false;
    }
    return !zero && !full;
}

}  // namespace

SemistableVerdict is_semistable(const ChainRep& rep, const StabilityData& sigma) {
    if (rep.is_zero()) throw std::invalid_argument("zero representation");
    const LatticeClass total = rep.class_of();
    const PhaseValue phi_total = sigma.effective_phase(total);
    SemistableVerdict verdict;
    verdict.semistable = true;
    std::optional<PhaseValue> best;
    for_each_subclass(rep.dims, [&](const std::vector<Integer>& uc) {
        if (!is_proper_nonzero(uc, rep.dims)) return;
        const LatticeClass u = quiver_class(uc);
        if (!subclass_feasible(rep, u)) return;
        const PhaseValue phi = sigma.effective_phase(u);
        if (phi > phi_total) {
            verdict.semistable = false;
            if (!best || phi > *best ||
                (phi == *best && u.coords < verdict.certificate->coords)) {
                best = phi;
                verdict.certificate = u;
            }
        }
    });
    return verdict;
}

SemistableVerdict is_semistable(const ChainRep& rep, const GluedCharge& z) {
    return is_semistable(rep, StabilityData(z));
}

std::vector<LatticeClass> HNResult::type() const {
    std::vector<LatticeClass> t;
    t.reserve(factors.size());
    for (const auto& f : factors) t.push_back(f.cls);
    return t;
}

HNResult hn_filtration(const ChainRep& rep, const StabilityData& sigma) {
    if (rep.is_zero()) throw std::invalid_argument("zero representation");
    HNResult result;
    IntervalSum cur = decompose(rep);
    const int n = rep.n;
    while (!cur.is_zero()) {
        const ChainRep r = cur.to_rep(n);
        const LatticeClass total = r.class_of();
        const PhaseValue phi_total = sigma.effective_phase(total);
        // Strict destabilizers of maximal phase.
        std::optional<PhaseValue> best;
        std::vector<LatticeClass> maximizers;
        for_each_subclass(r.dims, [&](const std::vector<Integer>& uc) {
            if (!is_proper_nonzero(uc, r.dims)) return;
            const LatticeClass u = quiver_class(uc);
            if (!subclass_feasible(r, u)) return;
            const PhaseValue phi = sigma.effective_phase(u);
            if (phi <= phi_total) return;
            if (!best || phi > *best) {
                best = phi;
                maximizers = {u};
            } else if (phi == *best) {
                maximizers.push_back(u);
            }
        });
        if (!best) {  // semistable: the remaining object is the last factor
            result.factors.push_back(HNFactor{total, phi_total, cur});
            break;
        }
        // The maximal destabilizing subobject: the coordinatewise join of the
        // maximal-phase destabilizers (their sum inside the object).
        LatticeClass join = maximizers.front();
        for (const auto& u : maximizers)
            for (size_t i = 0; i < join.coords.size(); ++i)
                join.coords[i] = std::max(join.coords[i], u.coords[i]);
        if (!subclass_feasible(r, join))
            throw std::logic_error("join of maximal destabilizers is not feasible");
        const PhaseValue phi_join = sigma.effective_phase(join);
        if (!(phi_join == *best))
            throw std::logic_error("join of maximal destabilizers changed phase");
        auto sq = interval_subobject(cur, n, join);
        if (!sq) throw std::logic_error("no interval witness for a feasible subclass");
        result.factors.push_back(HNFactor{join, phi_join, sq->sub});
        cur = sq->quotient;
    }
    // Phases must be strictly decreasing.
    for (size_t i = 0; i + 1 < result.factors.size(); ++i)
        if (!(result.factors[i].phase > result.factors[i + 1].phase))
            throw std::logic_error("HN phases are not strictly decreasing");
    return result;
}

HNResult hn_filtration(const ChainRep& rep, const GluedCharge& z) {
    return hn_filtration(rep, StabilityData(z));
}

bool shift_vector_admissible(const std::vector<long long>& m) {
    const int n = (int)m.size();
    if (n < 1) throw std::invalid_argument("shift vector needs n >= 1");
    // Gluing condition: Hom^{<=0}(i_l A_l, i_j A_j) = 0 for l < j, checked on
    // the simples. The node-l heart object is S_l placed in degree m_l.
    for (int l = 1; l <= n; ++l)
        for (int j = l + 1; j <= n; ++j) {
            const IntervalSum sl = IntervalSum::of({Interval{l, l, -m[(size_t)l - 1], 1}});
            // Hom^q(X, Y) = degree-0 Hom(X, Y[q]); between node simples only
            // Ext^0 and Ext^1 can contribute, so only two degrees need a look.
            for (long long d : {0LL, 1LL}) {
                const long long q = d + m[(size_t)j - 1] - m[(size_t)l - 1];
                if (q > 0) continue;
                const IntervalSum sj =
                    IntervalSum::of({Interval{j, j, -m[(size_t)j - 1] + q, 1}});
                if (hom_dim(sl, sj) != 0) return false;
            }
        }
    return true;
}

ShiftVectorReport glued_heart_shift_vectors(int n, long long lo, long long hi) {
    if (n < 1) throw std::invalid_argument("glued_heart_shift_vectors needs n >= 1");
    ShiftVectorReport report;
    for (int j = 1; j <= n; ++j) {
        if (j > 1) report.constraint += " <= ";
        report.constraint += "m_" + std::to_string(j);
    }
    std::vector<long long> m((size_t)n, lo);
    while (true) {
        if (shift_vector_admissible(m)) report.admissible.push_back(m);
        size_t i = 0;
        while (i < m.size()) {
            if (m[i] < hi) {
                ++m[i];
                for (size_t j = 0; j < i; ++j) m[j] = lo;
                break;
            }
            ++i;
        }
        if (i == m.size()) break;
    }
    return report;
}

GluingFiltration gluing_filtration(const IntervalSum& obj, int n,
                                   const std::vector<long long>& m) {
    if ((int)m.size() != n) throw std::invalid_argument("shift vector has wrong length");
    if (!shift_vector_admissible(m))
        throw std::invalid_argument("shift vector violates the gluing condition");
    std::vector<std::vector<Interval>> node_terms((size_t)n);
    for (const auto& t : obj.terms)
        for (int j = t.a; j <= t.b; ++j) {
            if (t.shift != -m[(size_t)j - 1])
                throw std::domain_error("object not in the glued heart at node " +
                                        std::to_string(j));
            node_terms[(size_t)j - 1].push_back(Interval{j, j, t.shift, t.mult});
        }
    GluingFiltration f;
    for (int j = n; j >= 1; --j)
        f.components.push_back(IntervalSum::of(node_terms[(size_t)j - 1]));
    return f;
}

std::vector<IntervalSum> interval_sums_of_class(const LatticeClass& beta) {
    if (beta.kind != LatticeKind::quiver)
        throw std::invalid_argument("interval enumeration expects a quiver class");
    for (const auto& c : beta.coords)
        if (c < 0) throw std::invalid_argument("class must be nonnegative");
    const int n = beta.n;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) pairs.emplace_back(a, b);
    std::vector<IntervalSum> out;
    std::vector<Interval> chosen;
    std::function<void(size_t, std::vector<Integer>&)> rec =
        [&](size_t idx, std::vector<Integer>& rem) {
            bool done = std::all_of(rem.begin(), rem.end(),
                                    [](const Integer& x) { return x == 0; });
            if (done) {
                out.push_back(IntervalSum::of(chosen));
                if (idx == pairs.size()) return;
            }
            if (idx == pairs.size()) return;
            const auto [a, b] = pairs[idx];
            Integer maxm = rem[(size_t)a - 1];
            for (int j = a; j <= b; ++j) maxm = std::min(maxm, rem[(size_t)j - 1]);
            // Multiplicity 0 first, then positive ones.
            rec(idx + 1, rem);
            for (Integer mcount = 1; mcount <= maxm; ++mcount) {
                chosen.push_back(Interval{a, b, 0, mcount});
                for (int j = a; j <= b; ++j) rem[(size_t)j - 1] -= mcount;
                rec(idx + 1, rem);
                for (int j = a; j <= b; ++j) rem[(size_t)j - 1] += mcount;
                chosen.pop_back();
            }
        };
    std::vector<Integer> rem = beta.coords;
    rec(0, rem);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    // Keep only sums whose class is exactly beta (the recursion guarantees it,
    // but the zero class would otherwise admit the empty sum).
    std::vector<IntervalSum> filtered;
    for (auto& s : out)
        if (s.class_of(n) == beta && !s.is_zero()) filtered.push_back(std::move(s));
    return filtered;
}

}  // namespace chainstab
