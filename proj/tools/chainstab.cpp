// Command-line surface for the chainstab library. All numeric I/O is exact
// (rational strings); outputs are byte-identical for identical inputs.
#include "CLI11.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chainstab/serialize.hpp"

using namespace chainstab;

namespace {

struct CliError : std::runtime_error {
    std::string type;
    CliError(std::string t, const std::string& msg)
        : std::runtime_error(msg), type(std::move(t)) {}
};

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("io", "cannot open file: " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw CliError("parse", "malformed JSON in " + path);
    return j;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw CliError("usage", "empty rational list");
    return out;
}

std::vector<Integer> parse_integer_list(const std::string& text) {
    std::vector<Integer> out;
    for (const auto& r : parse_rational_list(text)) {
        if (denominator(r) != 1)
            throw CliError("usage", "expected integers, got " + rational_to_string(r));
        out.push_back(numerator(r));
    }
    return out;
}

std::vector<std::pair<Rational, Rational>> parse_range_list(const std::string& text,
                                                            size_t count) {
    const auto flat = parse_rational_list(text);
    if (flat.size() != 2 * count)
        throw CliError("usage", "expected " + std::to_string(2 * count) +
                                    " comma-separated bounds (lo,hi per entry)");
    std::vector<std::pair<Rational, Rational>> out;
    for (size_t i = 0; i < count; ++i) out.emplace_back(flat[2 * i], flat[2 * i + 1]);
    return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// The engine's operations are sequential; a thread cap of at least one is
// always respected, but the value must still be sane when set.
void check_thread_env() {
    const char* v = std::getenv("CHAINSTAB_THREADS");
    if (!v) return;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || n < 1)
        throw CliError("usage", "CHAINSTAB_THREADS must be a positive integer");
}

int run(int argc, char** argv) {
    CLI::App app{"Exact stability computations for holomorphic chains"};
    app.require_subcommand(1);
    long long seed = 0;
    app.add_option("--seed", seed, "Random seed for sampling operations");

    // decompose
    auto* cmd_decompose = app.add_subcommand("decompose", "Interval decomposition");
    std::string rep_path;
    cmd_decompose->add_option("rep", rep_path, "representation JSON file")->required();

    // ss-check
    auto* cmd_ss = app.add_subcommand("ss-check", "Semistability verdict");
    std::string ss_rep, ss_alpha;
    cmd_ss->add_option("rep", ss_rep)->required();
    cmd_ss->add_option("--alpha", ss_alpha, "comma-separated stability parameters")
        ->required();

    // hn
    auto* cmd_hn = app.add_subcommand("hn", "Harder-Narasimhan filtration");
    std::string hn_rep, hn_alpha;
    cmd_hn->add_option("rep", hn_rep)->required();
    cmd_hn->add_option("--alpha", hn_alpha)->required();

    // walls
    auto* cmd_walls = app.add_subcommand("walls", "Wall list for a class");
    std::string w_beta, w_model = "quiver", w_bounds;
    cmd_walls->add_option("--beta", w_beta, "class coordinates")->required();
    cmd_walls->add_option("--model", w_model)->check(CLI::IsMember({"quiver", "chain"}));
    cmd_walls->add_option("--bounds", w_bounds,
                          "lo,hi per parameter (quiver) or per node degree (chain)");

    // chambers
    auto* cmd_ch = app.add_subcommand("chambers", "Chamber grid CSV");
    std::string c_beta, c_box;
    int c_grid = 5;
    cmd_ch->add_option("--beta", c_beta)->required();
    cmd_ch->add_option("--box", c_box, "lo,hi per parameter")->required();
    cmd_ch->add_option("--grid", c_grid, "samples per axis")->check(CLI::PositiveNumber);

    // glue-check
    auto* cmd_glue = app.add_subcommand("glue-check", "Shift-vector admissibility");
    std::string g_shifts;
    cmd_glue->add_option("--shifts", g_shifts)->required();

    // support-check
    auto* cmd_sup = app.add_subcommand("support-check", "Support-property report");
    std::string s_charge, s_qform, s_samples;
    cmd_sup->add_option("--charge", s_charge)->required();
    cmd_sup->add_option("--qform", s_qform)->required();
    cmd_sup->add_option("--samples", s_samples)->required();

    // tower
    auto* cmd_tower = app.add_subcommand("tower", "Projective-bundle tower");
    int t_n = 2;
    std::string t_derive;
    cmd_tower->add_option("--n", t_n)->required()->check(CLI::PositiveNumber);
    cmd_tower->add_option("--derive", t_derive)
        ->check(CLI::IsMember({"gluing", "sod"}));

    // mutate
    auto* cmd_mut = app.add_subcommand("mutate", "Mutate a decomposition record");
    std::string m_sod, m_side = "left";
    size_t m_index = 1;
    cmd_mut->add_option("--sod", m_sod)->required();
    cmd_mut->add_option("--index", m_index)->required();
    cmd_mut->add_option("--side", m_side)->check(CLI::IsMember({"left", "right"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << Json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 2;
    }
    check_thread_env();

    if (*cmd_decompose) {
        const ChainRep rep = chain_rep_from_json(load_json(rep_path));
        emit(interval_sum_json(decompose(rep)));
        return 0;
    }
    if (*cmd_ss) {
        const ChainRep rep = chain_rep_from_json(load_json(ss_rep));
        const auto alpha = parse_rational_list(ss_alpha);
        if ((int)alpha.size() != rep.n)
            throw CliError("usage", "alpha needs one entry per node");
        const auto verdict = is_semistable(rep, alpha_charge_quiver(alpha));
        emit(verdict_json(verdict));
        return verdict.semistable ? 0 : 1;
    }
    if (*cmd_hn) {
        const ChainRep rep = chain_rep_from_json(load_json(hn_rep));
        const auto alpha = parse_rational_list(hn_alpha);
        if ((int)alpha.size() != rep.n)
            throw CliError("usage", "alpha needs one entry per node");
        emit(hn_json(hn_filtration(rep, alpha_charge_quiver(alpha))));
        return 0;
    }
    if (*cmd_walls) {
        if (w_model == "quiver") {
            const auto dims = parse_integer_list(w_beta);
            const LatticeClass beta = quiver_class(dims);
            ParamBox box;
            box.ranges = w_bounds.empty()
                             ? std::vector<std::pair<Rational, Rational>>(
                                   dims.size(), {Rational(-10), Rational(10)})
                             : parse_range_list(w_bounds, dims.size());
            emit(walls_json(exact_walls(beta, alpha_family_quiver((int)dims.size()),
                                        box)));
        } else {
            const auto flat = parse_integer_list(w_beta);
            if (flat.size() % 2 != 0)
                throw CliError("usage",
                               "chain class needs d,r pairs: d1,r1,d2,r2,...");
            std::vector<std::pair<Integer, Integer>> pairs;
            for (size_t i = 0; i < flat.size(); i += 2)
                pairs.emplace_back(flat[i], flat[i + 1]);
            const ChainClass beta(0, pairs);
            if (w_bounds.empty())
                throw CliError("usage", "--bounds is required for the chain model");
            DegreeBox box;
            for (const auto& [lo, hi] : parse_range_list(w_bounds, pairs.size())) {
                if (denominator(lo) != 1 || denominator(hi) != 1)
                    throw CliError("usage", "degree bounds must be integers");
                box.degree.emplace_back(numerator(lo), numerator(hi));
            }
            emit(walls_json(alpha_walls(beta, box)));
        }
        return 0;
    }
    if (*cmd_ch) {
        const auto dims = parse_integer_list(c_beta);
        const LatticeClass beta = quiver_class(dims);
        ParamBox box;
        box.ranges = parse_range_list(c_box, dims.size());
        const auto grid =
            chamber_grid(beta, alpha_family_quiver((int)dims.size()), box, c_grid);
        std::cout << chamber_grid_csv(grid);
        return 0;
    }
    if (*cmd_glue) {
        std::vector<long long> m;
        for (const auto& x : parse_integer_list(g_shifts))
            m.push_back((long long)x);
        const bool ok = shift_vector_admissible(m);
        std::string constraint = "m_1";
        for (size_t i = 2; i <= m.size(); ++i)
            constraint += " <= m_" + std::to_string(i);
        emit(Json{{"admissible", ok}, {"constraint", constraint}});
        return 0;
    }
    if (*cmd_sup) {
        const GluedCharge z = glued_charge_from_json(load_json(s_charge));
        const QuadForm q = quad_form_from_json(load_json(s_qform));
        const Json js = load_json(s_samples);
        if (!js.is_array()) throw CliError("parse", "samples must be a JSON array");
        std::vector<LatticeClass> samples;
        for (const auto& e : js) samples.push_back(lattice_class_from_json(e));
        emit(support_report_json(check_support_property(z.flatten(), q, samples)));
        return 0;
    }
    if (*cmd_tower) {
        Json out{{"record", tower_record_json(build_tower(t_n))}};
        std::string pretty;
        if (t_derive == "gluing") {
            const Derivation d = derive_gluing_functor(t_n);
            out["derivation"] = derivation_json(d);
            pretty = d.pretty();
        } else if (t_derive == "sod") {
            Json derivs = Json::array();
            for (int j = 2; j <= t_n; ++j) {
                const Derivation d = check_semiorthogonality(t_n, j);
                derivs.push_back(derivation_json(d));
                pretty += "component " + std::to_string(j) +
                          " against component 1:\n" + d.pretty();
            }
            out["derivation"] = derivs;
        } else {
            out["derivation"] = nullptr;
        }
        emit(out);
        std::cout << pretty;
        return 0;
    }
    if (*cmd_mut) {
        const SODRecord rec = sod_record_from_json(load_json(m_sod));
        const SODRecord out = m_side == "left" ? left_mutate(rec, m_index)
                                               : right_mutate(rec, m_index);
        emit(sod_record_json(out));
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliError& e) {
        std::cerr << Json{{"error", {{"type", e.type}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", {{"type", "invalid-input"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 2;
    }
}
