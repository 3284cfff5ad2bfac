#include "infmax/solve_report.hpp"

namespace infmax {

std::string to_string(Termination t) {
    switch (t) {
        case Termination::optimal: return "optimal";
        case Termination::limit: return "limit";
        case Termination::error: return "error";
    }
    return "unknown";
}

std::string format_cut_counts(const std::map<CutFamily, std::size_t>& counts) {
    std::string out;
    for (const auto& [family, count] : counts) {
        if (count == 0) continue;
        if (!out.empty()) out += ';';
        out += to_string(family) + ':' + std::to_string(count);
    }
    return out.empty() ? "-" : out;
}

}  // namespace infmax
