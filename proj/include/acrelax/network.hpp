#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace acrelax {

struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Bus {
    int id = 0;  // original bus number
    double v_min = 0.0, v_max = 0.0;
    double p_demand = 0.0, q_demand = 0.0;  // per-unit
    double shunt_g = 0.0, shunt_b = 0.0;    // per-unit admittance
    bool is_reference = false;
    std::vector<double> raw;  // original matrix row, kept for serialization
};

struct Generator {
    int bus_id = 0;
    double p_min = 0.0, p_max = 0.0, q_min = 0.0, q_max = 0.0;  // per-unit
    // Matpower cost units: $/MW^2 h, $/MWh, $/h. The model builder scales
    // by base_mva when the variables are per-unit.
    double cost_c2 = 0.0, cost_c1 = 0.0, cost_c0 = 0.0;
    std::vector<double> raw, raw_cost;
};

struct Branch {
    int from_bus = 0, to_bus = 0;  // original bus numbers
    double r = 0.0, x = 0.0;
    double b_charge = 0.0;
    double tap = 1.0;
    double shift = 0.0;   // radians
    double s_max = 0.0;   // per-unit apparent power limit; 0 = unlimited
    double angmin = 0.0, angmax = 0.0;  // radians, inside (-pi/2, pi/2)
    bool pad_defaulted = false;
    std::vector<double> raw;
};

struct Network {
    std::string name;
    double base_mva = 100.0;
    std::vector<Bus> buses;
    std::vector<Generator> generators;
    std::vector<Branch> branches;
    std::vector<std::string> warnings;
    int reference_index = -1;
    std::unordered_map<int, int> bus_index;

    int bus_idx(int id) const {
        auto it = bus_index.find(id);
        if (it == bus_index.end()) throw std::out_of_range("unknown bus id");
        return it->second;
    }
};

// Parses the Matpower .m subset: baseMVA scalar, bus/gen/branch matrices,
// optional polynomial gencost. Out-of-service rows are dropped; absent PAD
// bounds default to +-pi/3.
Network parse_matpower(const std::string& text);

// Writes the network back in Matpower form. Raw matrix rows are preserved
// verbatim, so parse(serialize(parse(text))) reproduces identical values.
std::string serialize_matpower(const Network& n);

// Complex coefficients of the branch flow equations:
//   S_ij = from_self * W_ii + from_pair * W_ij
//   S_ji = to_self   * W_jj + to_pair   * conj(W_ij)
struct FlowCoefficients {
    std::complex<double> from_self, from_pair, to_self, to_pair;
};

FlowCoefficients branch_constants(const Branch& b);

// Canonical undirected edge: unique bus pair carrying one set of lifted
// W variables; parallel branches share it.
struct Edge {
    int bus_i = -1, bus_j = -1;  // indices into Network::buses, bus_i < bus_j
    // (branch index, aligned): aligned means branch.from maps to bus_i
    std::vector<std::pair<int, bool>> branches;
    double angmin = 0.0, angmax = 0.0;  // PAD bounds on theta_i - theta_j
};

std::vector<Edge> build_edges(const Network& n);

}  // namespace acrelax
