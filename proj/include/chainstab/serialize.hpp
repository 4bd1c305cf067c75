#pragma once

#include <nlohmann/json_fwd.hpp>

#include "chainstab/anmodel.hpp"
#include "chainstab/curvechain.hpp"
#include "chainstab/sodcalc.hpp"
#include "chainstab/towerrw.hpp"
#include "chainstab/walls.hpp"

namespace chainstab {

using Json = nlohmann::json;

// All numeric fields travel as exact rational strings ("-3/2", "7"); floats
// are never emitted. Parsers accept the UTF-8 minus sign on input and throw
// std::invalid_argument with a readable message on malformed data.

Json rational_json(const Rational& x);
Rational rational_from_json(const Json& j);

Json qmat_json(const QMat& m);
QMat qmat_from_json(const Json& j);

Json lattice_class_json(const LatticeClass& c);
LatticeClass lattice_class_from_json(const Json& j);

Json quad_form_json(const QuadForm& q);
QuadForm quad_form_from_json(const Json& j);

Json charge_json(const CentralCharge& z);
CentralCharge charge_from_json(const Json& j);

Json glued_charge_json(const GluedCharge& z);
// Accepts either {"nodes":[...]} or a bare single charge {"re":..,"im":..}.
GluedCharge glued_charge_from_json(const Json& j);

Json chain_rep_json(const ChainRep& rep);
ChainRep chain_rep_from_json(const Json& j);

Json interval_sum_json(const IntervalSum& s);

Json phase_json(const PhaseValue& p);

Json verdict_json(const SemistableVerdict& v);
Json hn_json(const HNResult& r);

Json wall_json(const Wall& w);
Json walls_json(const std::vector<Wall>& walls);

Json chain_class_json(const ChainClass& c);
ChainClass chain_class_from_json(const Json& j);

Json support_report_json(const SupportReport& r);

Json sod_record_json(const SODRecord& r);
SODRecord sod_record_from_json(const Json& j);

Json derivation_json(const Derivation& d);
Json tower_record_json(const TowerRecord& r);

Json shift_vector_report_json(const ShiftVectorReport& r);

// CSV text for a chamber grid: header then one row per sample point,
// rational strings throughout.
std::string chamber_grid_csv(const ChamberGrid& grid);

}  // namespace chainstab
