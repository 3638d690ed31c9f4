#pragma once

#include <string>

#include "acrelax/model.hpp"
#include "acrelax/obbt.hpp"
#include "acrelax/oracle.hpp"

namespace acrelax {

std::string network_to_json(const Network& n);
std::string model_to_json(const RelaxModel& m);
std::string bounds_to_json(const Network& n, const std::vector<Edge>& edges, const BoundSet& b);
std::string solve_report_to_json(const SolveReport& rep, ModelKind kind, double ac_obj,
                                 bool have_ac);
// Sampling report: {params, count, violations:[{cut, point, slack}]}.
// params is omitted when no edge parameters are supplied (aggregate runs).
std::string fuzz_report_to_json(const FuzzReport& rep, const EdgeParams* params = nullptr);
std::string obbt_report_to_json(const Network& n, const std::vector<Edge>& edges,
                                const ObbtReport& rep);

// Cut dump: one row per generated cut over the lifted edge variables.
std::string cuts_to_csv(const Network& n, const std::vector<Edge>& edges, const BoundSet& b);

// gap% = 100 (ac - lb) / |ac|; warns via the returned flag when ac < 0.
double optimality_gap(double ac_obj, double lower_bound, bool* negative_denominator = nullptr);

}  // namespace acrelax
