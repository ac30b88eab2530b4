#pragma once

/**
 * @file linkdiagram.hpp
 * @brief Planar link diagrams as arc/crossing lists: the input format of the
 *        brute-force oracles, extracted from tangle expressions or read from
 *        a plain-text file.
 *
 * File format: a header line `arcs N crossings M`, then M lines
 * `over under_in under_out sign` with 0-based arc indices and sign +-1.
 * Arcs are the maximal overpasses of an oriented diagram; each arc ends by
 * running under a crossing, whose `under_out` names the continuation.
 */

#include "dwlink/tangle.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dwlink {

struct DiagramCrossing {
    int over = 0;
    int under_in = 0;
    int under_out = 0;
    int sign = +1;
};

struct LinkDiagram {
    int num_arcs = 0;
    std::vector<DiagramCrossing> crossings;

    // derived data, filled by finalize()
    std::vector<int> arc_component;
    int num_components = 0;
    std::vector<int> component_meridian;          // first arc of each component
    std::vector<long long> component_self_writhe; // signed self-crossing count
    // blackboard longitude per component: letters (arc, exponent) collected
    // while traversing the component from its meridian arc
    std::vector<std::vector<std::pair<int, int>>> component_longitude;

    /// Compute components, meridians, writhes, and longitude words; validates
    /// arc bookkeeping and throws on inconsistent diagrams.
    void finalize();
};

/// Extract the diagram of a closed analyzed tangle (arcs are split at the
/// underpasses of the oriented strand walk).
LinkDiagram diagram_from_analysis(const TangleAnalysis& an);

LinkDiagram read_diagram(std::istream& in);
LinkDiagram read_diagram_file(const std::string& path);
std::string write_diagram(const LinkDiagram& d);

} // namespace dwlink
