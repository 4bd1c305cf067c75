#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace chainstab {

// Symbolic geometry over the tower of projective bundles
//   level n -> level n-1 -> ... -> level 1 -> level 0 (the base).
// Terms are well-leveled by construction: Pull_l maps level l-1 to l, Push_l
// maps level l to l-1, and all other nodes preserve the level of their kids.
enum class TermKind { zero, line, gen, external, pull, push, tensor, dual, shift, sum };

struct GeomTerm;
using TermPtr = std::shared_ptr<const GeomTerm>;

struct GeomTerm {
    TermKind kind;
    int level = 0;
    long long num = 0;          // line twist, shift amount, or generator index
    std::string name;           // generator family or external object name
    std::vector<TermPtr> kids;

    std::string print() const;
    size_t hash() const;
};

bool term_equal(const TermPtr& a, const TermPtr& b);

// Builders (validate levels, throw on mismatch).
TermPtr t_zero(int level);
TermPtr t_line(int level, long long twist);       // O(twist) on the level
TermPtr t_external(std::string name);             // object on the base, level 0
TermPtr t_L(int l, int i);                        // simple-module line bundle
TermPtr t_K(int j);                               // fiber bundle of level j, lives on j-1
TermPtr t_Eb(int l);                              // projective-cover bundle on level l
TermPtr t_pull(int l, TermPtr t);
TermPtr t_push(int l, TermPtr t);
TermPtr t_tensor(std::vector<TermPtr> kids);
TermPtr t_dual(TermPtr t);
TermPtr t_shift(TermPtr t, long long k);
TermPtr t_sum(std::vector<TermPtr> kids);

struct RewriteRule {
    std::string id;
    std::string anchor;  // the geometric fact the rule encodes
};

// The fixed, versioned rule set.
const std::vector<RewriteRule>& axioms();

struct DerivationStep {
    std::string rule;
    std::vector<size_t> path;  // kid indices from the root to the rewrite site
    size_t before_hash = 0;
    size_t after_hash = 0;
    std::string after;  // printed whole term right after the step
};

struct Derivation {
    TermPtr start;
    TermPtr result;
    std::vector<DerivationStep> steps;

    // Equality chain, one line per recorded step.
    std::string pretty() const;
    std::vector<std::string> rule_sequence(bool include_cleanup = false) const;
};

struct NormalizeResult {
    TermPtr term;
    Derivation derivation;
    bool complete = false;  // false when the step budget ran out
};

// Fixed innermost-leftmost strategy with rule priority
// A4 < A2 < A1,A3,A5,A6,A7,A8 < A10; structural cleanup (tensor, sum, shift
// and dual bookkeeping) runs after every step and is recorded as A9.
NormalizeResult normalize(const TermPtr& t, size_t budget = 10000);

// Replays recorded steps from the start term; true iff every step applies at
// its recorded position and reproduces the recorded hashes and final term.
bool replay(const Derivation& d);

// The composite push-pull probe of the second component against the first,
// normalized; throws (with the stuck term printed) unless it ends in E[-1].
Derivation derive_gluing_functor(int n, size_t budget = 10000);

// Hom-vanishing probe of component j against component 1 for 2 <= j <= n;
// throws unless the normal form is Zero.
Derivation check_semiorthogonality(int n, int j, size_t budget = 10000);

struct TowerLevel {
    int level = 0;
    std::optional<int> fiber_rank;  // known only at the bottom of the tower
    std::string note;
};

struct TowerRecord {
    int n = 0;
    std::vector<TowerLevel> levels;
    // label -> fully unfolded description of each line bundle on the top level
    std::vector<std::pair<std::string, std::string>> line_bundles;
    std::vector<std::string> extensions;  // the defining short exact sequences
};

TowerRecord build_tower(int n);

}  // namespace chainstab
