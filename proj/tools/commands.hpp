#pragma once

// Solver entry points shared by the command-line tool and the acceptance
// suite, so that both exercise exactly the same code paths.

#include <optional>
#include <string>

#include "oddwidth/oddwidth.hpp"

namespace oddwidth::cli {

struct MwisAnswer {
    MwisResult result;
    std::string method; // "dp_solve" or "mwis_bounded_ocp"
};

// With a decomposition the OCP-tree-decomposition DP is used; without one,
// the exact branch and bound.
inline MwisAnswer mwis_command(const WeightedGraph& wg, const std::optional<OcpTreeDecomposition>& d,
                               const DpOptions& opt = {}) {
    MwisAnswer a;
    if (d) {
        a.result = dp_solve(wg, *d, opt);
        a.method = "dp_solve";
    } else {
        a.result = mwis_bounded_ocp(wg, opt.inner);
        a.method = "mwis_bounded_ocp";
    }
    if (!is_independent(wg.graph, a.result.witness) || weight_of(wg, a.result.witness) != a.result.value)
        throw std::logic_error("MWIS witness does not certify the reported value");
    return a;
}

} // namespace oddwidth::cli
