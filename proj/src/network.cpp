#include "acrelax/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace acrelax {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDefaultPad = kPi / 3.0;
constexpr double kPadClamp = kPi / 2.0 - kPi / 360.0;  // 89.5 degrees
constexpr double kDeg2Rad = kPi / 180.0;

struct Matrix {
    std::vector<std::vector<double>> rows;
    std::vector<int> row_lines;
};

struct RawCase {
    std::string name;
    double base_mva = -1.0;
    int base_line = -1;
    std::map<std::string, Matrix> matrices;
};

// Strips Matlab comments and splits into lines with their numbers.
std::vector<std::pair<int, std::string>> split_lines(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    std::string cur;
    int line = 1;
    for (char ch : text) {
        if (ch == '\n') {
            out.emplace_back(line, cur);
            cur.clear();
            ++line;
        } else {
            cur.push_back(ch);
        }
    }
    out.emplace_back(line, cur);
    for (auto& [no, s] : out) {
        const auto pos = s.find('%');
        if (pos != std::string::npos) s.erase(pos);
    }
    return out;
}

bool parse_row_numbers(const std::string& s, std::vector<double>& vals, int line_no) {
    vals.clear();
    const char* p = s.c_str();
    while (*p) {
        while (*p == ' ' || *p == '\t' || *p == ',' || *p == ';' || *p == '\r') ++p;
        if (!*p || *p == ']') break;
        char* end = nullptr;
        const double v = std::strtod(p, &end);
        if (end == p) throw ParseError("malformed matrix entry '" + std::string(p) + "'", line_no);
        if (!std::isfinite(v)) throw ParseError("non-finite matrix entry", line_no);
        vals.push_back(v);
        p = end;
    }
    return !vals.empty();
}

RawCase scan_case(const std::string& text) {
    RawCase rc;
    const auto lines = split_lines(text);
    std::size_t i = 0;
    while (i < lines.size()) {
        const auto& [no, s] = lines[i];
        const auto fpos = s.find("function");
        if (fpos != std::string::npos && rc.name.empty()) {
            const auto eq = s.find('=', fpos);
            if (eq != std::string::npos) {
                std::string nm = s.substr(eq + 1);
                nm.erase(0, nm.find_first_not_of(" \t"));
                const auto end = nm.find_first_of(" \t;(");
                rc.name = nm.substr(0, end);
            }
            ++i;
            continue;
        }
        const auto mpos = s.find("mpc.");
        if (mpos == std::string::npos) {
            ++i;
            continue;
        }
        const auto eq = s.find('=', mpos);
        if (eq == std::string::npos) {
            ++i;
            continue;
        }
        std::string field = s.substr(mpos + 4, eq - mpos - 4);
        field.erase(field.find_last_not_of(" \t") + 1);
        std::string rest = s.substr(eq + 1);
        const auto br = rest.find('[');
        if (br == std::string::npos) {
            if (field == "baseMVA") {
                char* end = nullptr;
                const double v = std::strtod(rest.c_str(), &end);
                if (end == rest.c_str()) throw ParseError("bad baseMVA", no);
                rc.base_mva = v;
                rc.base_line = no;
            }
            ++i;
            continue;
        }
        // matrix block: consume rows until ']'
        Matrix m;
        std::string chunk = rest.substr(br + 1);
        int chunk_line = no;
        bool done = false;
        while (true) {
            const auto close = chunk.find(']');
            std::string body = close == std::string::npos ? chunk : chunk.substr(0, close);
            std::vector<double> vals;
            if (parse_row_numbers(body, vals, chunk_line)) {
                m.rows.push_back(std::move(vals));
                m.row_lines.push_back(chunk_line);
            }
            if (close != std::string::npos) {
                done = true;
                break;
            }
            ++i;
            if (i >= lines.size()) break;
            chunk = lines[i].second;
            chunk_line = lines[i].first;
        }
        if (!done) throw ParseError("unterminated matrix mpc." + field, no);
        rc.matrices[field] = std::move(m);
        ++i;
    }
    return rc;
}

double pad_from_degrees(double deg_lo, double deg_hi, bool lower, bool* defaulted) {
    const bool absent = (deg_lo == 0.0 && deg_hi == 0.0) || deg_lo <= -360.0 || deg_hi >= 360.0;
    if (absent) {
        *defaulted = true;
        return lower ? -kDefaultPad : kDefaultPad;
    }
    const double rad = (lower ? deg_lo : deg_hi) * kDeg2Rad;
    return std::clamp(rad, -kPadClamp, kPadClamp);
}

}  // namespace

Network parse_matpower(const std::string& text) {
    const RawCase rc = scan_case(text);
    if (rc.base_mva <= 0.0) throw ParseError("missing or nonpositive mpc.baseMVA", 1);
    const auto need = [&](const char* f) -> const Matrix& {
        auto it = rc.matrices.find(f);
        if (it == rc.matrices.end())
            throw ParseError(std::string("missing matrix mpc.") + f, 1);
        return it->second;
    };
    Network n;
    n.name = rc.name;
    n.base_mva = rc.base_mva;
    const double base = n.base_mva;

    const Matrix& busm = need("bus");
    for (std::size_t r = 0; r < busm.rows.size(); ++r) {
        const auto& row = busm.rows[r];
        const int line = busm.row_lines[r];
        if (row.size() < 13) throw ParseError("bus row needs 13 columns", line);
        Bus b;
        b.id = static_cast<int>(row[0]);
        const int type = static_cast<int>(row[1]);
        b.p_demand = row[2] / base;
        b.q_demand = row[3] / base;
        b.shunt_g = row[4] / base;
        b.shunt_b = row[5] / base;
        b.v_max = row[11];
        b.v_min = row[12];
        b.is_reference = (type == 3);
        if (!(b.v_min > 0.0 && b.v_min <= b.v_max))
            throw ParseError("bus voltage bounds must satisfy 0 < Vmin <= Vmax", line);
        b.raw = row;
        if (n.bus_index.count(b.id)) throw ParseError("duplicate bus id", line);
        n.bus_index[b.id] = static_cast<int>(n.buses.size());
        n.buses.push_back(std::move(b));
    }
    int refs = 0;
    for (std::size_t k = 0; k < n.buses.size(); ++k)
        if (n.buses[k].is_reference) {
            ++refs;
            n.reference_index = static_cast<int>(k);
        }
    if (refs != 1)
        throw ParseError("network must have exactly one reference (type 3) bus, found " +
                             std::to_string(refs),
                         busm.row_lines.empty() ? 1 : busm.row_lines[0]);

    const Matrix& genm = need("gen");
    const Matrix* costm = nullptr;
    if (auto it = rc.matrices.find("gencost"); it != rc.matrices.end()) {
        costm = &it->second;
        if (costm->rows.size() < genm.rows.size())
            throw ParseError("gencost has fewer rows than gen", costm->row_lines[0]);
        if (costm->rows.size() > genm.rows.size())
            n.warnings.push_back("gencost has extra rows (reactive costs?); using the first " +
                                 std::to_string(genm.rows.size()));
    }
    for (std::size_t r = 0; r < genm.rows.size(); ++r) {
        const auto& row = genm.rows[r];
        const int line = genm.row_lines[r];
        if (row.size() < 10) throw ParseError("gen row needs 10 columns", line);
        if (row[7] <= 0.0) continue;  // out of service
        Generator g;
        g.bus_id = static_cast<int>(row[0]);
        if (!n.bus_index.count(g.bus_id)) throw ParseError("gen references unknown bus", line);
        g.q_max = row[3] / base;
        g.q_min = row[4] / base;
        g.p_max = row[8] / base;
        g.p_min = row[9] / base;
        if (g.p_min > g.p_max || g.q_min > g.q_max)
            throw ParseError("generator box bounds inverted", line);
        if (costm) {
            const auto& c = costm->rows[r];
            const int cline = costm->row_lines[r];
            if (c.size() < 4) throw ParseError("gencost row needs >= 4 columns", cline);
            const int model = static_cast<int>(c[0]);
            if (model != 2)
                throw UnsupportedError("gencost model " + std::to_string(model) +
                                       " unsupported (polynomial only), line " +
                                       std::to_string(cline));
            const int ncoef = static_cast<int>(c[3]);
            if (ncoef > 3)
                throw UnsupportedError("gencost polynomial degree > 2 unsupported, line " +
                                       std::to_string(cline));
            if (c.size() < 4 + static_cast<std::size_t>(ncoef))
                throw ParseError("gencost row shorter than its n", cline);
            double coef[3] = {0.0, 0.0, 0.0};  // c2 c1 c0
            for (int k = 0; k < ncoef; ++k) coef[3 - ncoef + k] = c[4 + static_cast<std::size_t>(k)];
            g.cost_c2 = coef[0];
            g.cost_c1 = coef[1];
            g.cost_c0 = coef[2];
            if (g.cost_c2 < 0.0) throw ParseError("negative quadratic cost coefficient", cline);
            g.raw_cost = c;
        }
        g.raw = row;
        n.generators.push_back(std::move(g));
    }

    const Matrix& brm = need("branch");
    int defaulted = 0;
    for (std::size_t r = 0; r < brm.rows.size(); ++r) {
        const auto& row = brm.rows[r];
        const int line = brm.row_lines[r];
        if (row.size() < 11) throw ParseError("branch row needs >= 11 columns", line);
        if (row[10] <= 0.0) continue;  // out of service
        Branch b;
        b.from_bus = static_cast<int>(row[0]);
        b.to_bus = static_cast<int>(row[1]);
        if (!n.bus_index.count(b.from_bus) || !n.bus_index.count(b.to_bus))
            throw ParseError("branch references unknown bus", line);
        if (b.from_bus == b.to_bus) throw ParseError("branch is a self loop", line);
        b.r = row[2];
        b.x = row[3];
        b.b_charge = row[4];
        if (b.r * b.r + b.x * b.x <= 0.0) throw ParseError("branch has zero impedance", line);
        b.s_max = row[5] / base;  // rateA; 0 stays "unlimited"
        b.tap = row.size() > 8 && row[8] != 0.0 ? row[8] : 1.0;
        b.shift = row.size() > 9 ? row[9] * kDeg2Rad : 0.0;
        const double alo = row.size() > 11 ? row[11] : 0.0;
        const double ahi = row.size() > 12 ? row[12] : 0.0;
        b.angmin = pad_from_degrees(alo, ahi, true, &b.pad_defaulted);
        b.angmax = pad_from_degrees(alo, ahi, false, &b.pad_defaulted);
        if (b.angmin > b.angmax) throw ParseError("branch PAD bounds inverted", line);
        if (b.pad_defaulted) ++defaulted;
        b.raw = row;
        n.branches.push_back(std::move(b));
    }
    if (defaulted > 0)
        n.warnings.push_back(std::to_string(defaulted) +
                             " branch(es) had no PAD bounds; defaulted to +-pi/3");

    // connectivity check (warn only)
    std::vector<int> seen(n.buses.size(), 0);
    std::vector<int> stack{n.reference_index};
    seen[static_cast<std::size_t>(n.reference_index)] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const auto& b : n.branches) {
            const int fi = n.bus_idx(b.from_bus), ti = n.bus_idx(b.to_bus);
            const int v = fi == u ? ti : (ti == u ? fi : -1);
            if (v >= 0 && !seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
        }
    }
    if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(n.buses.size()))
        n.warnings.push_back("network graph is not connected");
    return n;
}

namespace {
std::string fmt_row(const std::vector<double>& row) {
    std::string s = "\t";
    char buf[64];
    for (std::size_t k = 0; k < row.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", row[k]);
        s += buf;
        if (k + 1 < row.size()) s += "\t";
    }
    s += ";\n";
    return s;
}
}  // namespace

std::string serialize_matpower(const Network& n) {
    std::ostringstream os;
    os << "function mpc = " << (n.name.empty() ? "acrelax_case" : n.name) << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", n.base_mva);
    os << "mpc.version = '2';\nmpc.baseMVA = " << buf << ";\n";
    os << "mpc.bus = [\n";
    for (const auto& b : n.buses) os << fmt_row(b.raw);
    os << "];\nmpc.gen = [\n";
    for (const auto& g : n.generators) os << fmt_row(g.raw);
    os << "];\n";
    if (!n.generators.empty() && !n.generators.front().raw_cost.empty()) {
        os << "mpc.gencost = [\n";
        for (const auto& g : n.generators) os << fmt_row(g.raw_cost);
        os << "];\n";
    }
    os << "mpc.branch = [\n";
    for (const auto& b : n.branches) os << fmt_row(b.raw);
    os << "];\n";
    return os.str();
}

FlowCoefficients branch_constants(const Branch& b) {
    if (b.r * b.r + b.x * b.x <= 0.0)
        throw std::invalid_argument("branch_constants: zero impedance");
    const std::complex<double> y = 1.0 / std::complex<double>(b.r, b.x);
    const std::complex<double> tap = std::polar(b.tap, b.shift);
    const std::complex<double> yc(0.0, 0.5 * b.b_charge);
    const std::complex<double> yff = (y + yc) / (tap * std::conj(tap));
    const std::complex<double> yft = -y / std::conj(tap);
    const std::complex<double> ytf = -y / tap;
    const std::complex<double> ytt = y + yc;
    FlowCoefficients fc;
    fc.from_self = std::conj(yff);
    fc.from_pair = std::conj(yft);
    fc.to_self = std::conj(ytt);
    fc.to_pair = std::conj(ytf);
    return fc;
}

std::vector<Edge> build_edges(const Network& n) {
    std::map<std::pair<int, int>, Edge> em;
    for (std::size_t k = 0; k < n.branches.size(); ++k) {
        const auto& b = n.branches[k];
        const int fi = n.bus_idx(b.from_bus), ti = n.bus_idx(b.to_bus);
        const bool aligned = fi < ti;
        const std::pair<int, int> key{std::min(fi, ti), std::max(fi, ti)};
        auto [it, fresh] = em.try_emplace(key);
        Edge& e = it->second;
        if (fresh) {
            e.bus_i = key.first;
            e.bus_j = key.second;
            e.angmin = -kPadClamp;
            e.angmax = kPadClamp;
        }
        const double lo = aligned ? b.angmin : -b.angmax;
        const double hi = aligned ? b.angmax : -b.angmin;
        e.angmin = std::max(e.angmin, lo);
        e.angmax = std::min(e.angmax, hi);
        if (e.angmin > e.angmax)
            throw std::runtime_error("parallel branches have incompatible PAD bounds between buses " +
                                     std::to_string(n.buses[static_cast<std::size_t>(e.bus_i)].id) +
                                     " and " +
                                     std::to_string(n.buses[static_cast<std::size_t>(e.bus_j)].id));
        e.branches.emplace_back(static_cast<int>(k), aligned);
    }
    std::vector<Edge> edges;
    edges.reserve(em.size());
    for (auto& [key, e] : em) edges.push_back(std::move(e));
    return edges;
}

}  // namespace acrelax
