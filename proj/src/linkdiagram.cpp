#include "dwlink/linkdiagram.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace dwlink {

void LinkDiagram::finalize() {
    int m = static_cast<int>(crossings.size());
    for (const auto& c : crossings) {
        if (c.over < 0 || c.over >= num_arcs || c.under_in < 0 || c.under_in >= num_arcs ||
            c.under_out < 0 || c.under_out >= num_arcs)
            throw std::invalid_argument("diagram: arc index out of range");
        if (c.sign != 1 && c.sign != -1) throw std::invalid_argument("diagram: sign must be +-1");
    }

    // each arc ends under exactly one crossing, or under none (a free circle)
    std::vector<int> end_crossing(num_arcs, -1), in_count(num_arcs, 0), out_count(num_arcs, 0);
    for (int c = 0; c < m; ++c) {
        ++in_count[crossings[c].under_in];
        ++out_count[crossings[c].under_out];
        if (end_crossing[crossings[c].under_in] >= 0)
            throw std::invalid_argument("diagram: an arc runs under two crossings");
        end_crossing[crossings[c].under_in] = c;
    }
    for (int a = 0; a < num_arcs; ++a)
        if (in_count[a] != out_count[a])
            throw std::invalid_argument("diagram: arc chain is not closed at arc " +
                                        std::to_string(a));

    auto succ = [&](int a) {
        return end_crossing[a] < 0 ? a : crossings[end_crossing[a]].under_out;
    };

    arc_component.assign(num_arcs, -1);
    component_meridian.clear();
    for (int a = 0; a < num_arcs; ++a) {
        if (arc_component[a] >= 0) continue;
        int comp = static_cast<int>(component_meridian.size());
        component_meridian.push_back(a);
        int cur = a;
        do {
            if (arc_component[cur] >= 0)
                throw std::invalid_argument("diagram: arc chains collide");
            arc_component[cur] = comp;
            cur = succ(cur);
        } while (cur != a);
    }
    num_components = static_cast<int>(component_meridian.size());

    component_self_writhe.assign(num_components, 0);
    for (const auto& c : crossings)
        if (arc_component[c.over] == arc_component[c.under_in])
            component_self_writhe[arc_component[c.over]] += c.sign;

    component_longitude.assign(num_components, {});
    for (int comp = 0; comp < num_components; ++comp) {
        int start = component_meridian[comp];
        int cur = start;
        do {
            int c = end_crossing[cur];
            if (c < 0) break; // crossing-free circle
            component_longitude[comp].emplace_back(crossings[c].over, crossings[c].sign);
            cur = crossings[c].under_out;
        } while (cur != start);
    }
}

LinkDiagram diagram_from_analysis(const TangleAnalysis& an) {
    if (!an.closed()) throw std::invalid_argument("diagram extraction needs a closed tangle");
    LinkDiagram d;
    d.crossings.assign(an.crossings().size(), DiagramCrossing{});
    std::map<const TangleNode*, int> crossing_index;
    for (size_t i = 0; i < an.crossings().size(); ++i) {
        crossing_index[an.crossings()[i].node] = static_cast<int>(i);
        // the crossing the evaluator treats as positive is the mirror of the
        // crossing the standard Wirtinger conventions treat as positive; the
        // oracle comparisons pin this sign flip
        d.crossings[i].sign = -an.crossings()[i].sign;
    }

    int next_arc = 0;
    for (int comp = 0; comp < an.component_count(); ++comp) {
        std::vector<int> cycle = an.oriented_cycle(comp);
        // collect crossing passages in traversal order
        struct Passage {
            int crossing;
            bool over;
        };
        std::vector<Passage> passages;
        for (size_t k = 0; k + 1 < cycle.size(); k += 2) {
            int p = cycle[k];
            const TangleNode* leaf = an.leaf_of(p);
            if (leaf->kind != TangleKind::CrossPos && leaf->kind != TangleKind::CrossNeg) continue;
            int ci = crossing_index.at(leaf);
            const auto& info = an.crossings()[ci];
            bool strand_a = (p == info.s1 || p == info.t2);
            bool over = (leaf->kind == TangleKind::CrossPos) ? strand_a : !strand_a;
            passages.push_back({ci, over});
        }
        int unders = 0;
        for (const auto& ps : passages)
            if (!ps.over) ++unders;
        int base = next_arc;
        int arcs_here = std::max(unders, 1);
        next_arc += arcs_here;
        int cur = 0; // arc offset within the component
        for (const auto& ps : passages) {
            if (ps.over) {
                d.crossings[ps.crossing].over = base + cur;
            } else {
                d.crossings[ps.crossing].under_in = base + cur;
                cur = (cur + 1) % arcs_here;
                d.crossings[ps.crossing].under_out = base + cur;
            }
        }
    }
    d.num_arcs = next_arc;
    d.finalize();
    return d;
}

LinkDiagram read_diagram(std::istream& in) {
    std::string word;
    LinkDiagram d;
    int m = 0;
    if (!(in >> word) || word != "arcs" || !(in >> d.num_arcs) || !(in >> word) ||
        word != "crossings" || !(in >> m))
        throw std::invalid_argument("diagram header must be: arcs N crossings M");
    for (int i = 0; i < m; ++i) {
        DiagramCrossing c;
        if (!(in >> c.over >> c.under_in >> c.under_out >> c.sign))
            throw std::invalid_argument("diagram: truncated crossing list");
        d.crossings.push_back(c);
    }
    d.finalize();
    return d;
}

LinkDiagram read_diagram_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open diagram file: " + path);
    return read_diagram(f);
}

std::string write_diagram(const LinkDiagram& d) {
    std::ostringstream out;
    out << "arcs " << d.num_arcs << " crossings " << d.crossings.size() << "\n";
    for (const auto& c : d.crossings)
        out << c.over << " " << c.under_in << " " << c.under_out << " " << c.sign << "\n";
    return out.str();
}

} // namespace dwlink
