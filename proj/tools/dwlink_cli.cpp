// Command-line front end: simple-object catalogues, Montesinos invariants,
// n-coloring counts, tangle evaluation, homomorphism counting, and a
// deterministic self-test. All machine output is versioned JSON ("schema": 1)
// with complex numbers as {re, im}; exit codes: 0 ok, 1 mismatch, 2 usage.

#include "dwlink/dihedral.hpp"
#include "dwlink/montesinos.hpp"
#include "dwlink/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace dwlink;
using nlohmann::json;

namespace {

json jcplx(cplx z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

double default_tolerance() {
    if (const char* env = std::getenv("DWLINK_TOLERANCE")) {
        try {
            double v = std::stod(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring malformed DWLINK_TOLERANCE\n";
    }
    return kTol;
}

json evector_json(const EVector& v, const CategoryContext& ctx) {
    json pairs = json::array();
    for (int i = 0; i < v.space().count(); ++i) {
        auto [x, g] = v.space().pair(i);
        cplx z = v.values()(i);
        pairs.push_back(json{{"x", x}, {"g", g}, {"re", z.real()}, {"im", z.imag()}});
    }
    json coeffs = json::array();
    for (int i = 0; i < ctx.simple_count(); ++i) {
        cplx c = inner_product(v, ctx.chi(i));
        coeffs.push_back(json{{"i", i}, {"re", c.real()}, {"im", c.imag()}});
    }
    return json{{"pairs", pairs}, {"basis_coefficients", coeffs}};
}

json morphism_json(const Morphism& m) {
    json rows = json::array();
    for (int r = 0; r < m.mat.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.mat.cols(); ++c) row.push_back(jcplx(m.mat(r, c)));
        rows.push_back(row);
    }
    json src = json::array(), tgt = json::array();
    for (const auto& f : m.src) src.push_back(f->name());
    for (const auto& f : m.tgt) tgt.push_back(f->name());
    return json{{"source", src}, {"target", tgt}, {"matrix", rows}};
}

void emit(const json& doc, const std::string& format) {
    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else if (format == "csv" || format == "pretty") {
        // tables know how to flatten themselves; fall back to compact JSON
        if (doc.contains("csv")) {
            std::cout << doc["csv"].get<std::string>();
        } else {
            std::cout << doc.dump(2) << "\n";
        }
    }
}

int cmd_simples(const std::string& group_spec, std::uint64_t seed, double tol,
                const std::string& format) {
    auto ctx = std::make_shared<CategoryContext>(build_named_group(group_spec), seed);
    json rows = json::array();
    std::string csv = "index,class_rep,centralizer_irrep_dim,dim,theta_re,theta_im\n";
    long long sum_sq = 0;
    for (int i = 0; i < ctx->simple_count(); ++i) {
        const SimpleIndex& si = ctx->simple_index(i);
        const auto& cls = ctx->data().classes[si.class_idx];
        int irrep_dim = ctx->data().class_irreps[si.class_idx][si.irrep_idx].dim;
        cplx th = ctx->twist(i);
        sum_sq += static_cast<long long>(ctx->dim_of(i)) * ctx->dim_of(i);
        rows.push_back(json{{"index", i},
                            {"class_representative", ctx->group().label(cls.representative)},
                            {"centralizer_irrep_dim", irrep_dim},
                            {"dim", ctx->dim_of(i)},
                            {"theta", jcplx(th)}});
        csv += std::to_string(i) + "," + ctx->group().label(cls.representative) + "," +
               std::to_string(irrep_dim) + "," + std::to_string(ctx->dim_of(i)) + "," +
               std::to_string(th.real()) + "," + std::to_string(th.imag()) + "\n";
    }
    json doc{{"schema", 1},
             {"command", "simples"},
             {"tolerance", tol},
             {"group", group_spec},
             {"order", ctx->group().order()},
             {"simple_count", ctx->simple_count()},
             {"sum_dim_squared", sum_sq},
             {"rows", rows},
             {"csv", csv}};
    emit(doc, format);
    return 0;
}

int cmd_montesinos(const std::string& group_spec, const std::string& fractions, bool with_oracle,
                   bool show_raw, bool show_corrected, std::uint64_t seed, double tol,
                   const std::string& format) {
    auto ctx = std::make_shared<CategoryContext>(build_named_group(group_spec), seed);
    MontesinosSpec spec = MontesinosSpec::parse(fractions);
    MontesinosResult res = montesinos_invariant(spec, *ctx);

    json scalars = json::array();
    for (size_t i = 0; i < res.scalars.size(); ++i)
        scalars.push_back(json{{"coloring", i},
                               {"value", jcplx(res.scalars[i])},
                               {"real", static_cast<bool>(res.scalar_real[i])},
                               {"nonnegative", static_cast<bool>(res.scalar_nonneg[i])}});

    json doc{{"schema", 1},
             {"command", "montesinos"},
             {"group", group_spec},
             {"fractions", spec.to_string()},
             {"knot", res.knot},
             {"writhe", res.writhe},
             {"tolerance", tol},
             {"scalars", scalars}};

    // raw and corrected component tables (single-component case dumps E-vectors)
    {
        MontesinosBuild mb = build_montesinos(spec);
        TangleAnalysis an(mb.closed);
        std::vector<long long> neg_writhes;
        for (int c = 0; c < an.component_count(); ++c) neg_writhes.push_back(-an.writhe(c));
        MultiEVector corrected = res.invariant.q_twist(neg_writhes);
        if (res.invariant.components() == 1) {
            if (show_raw) {
                EVector raw(ctx->pairs(), res.invariant.values());
                doc["raw"] = evector_json(raw, *ctx);
            }
            if (show_corrected) {
                EVector cor(ctx->pairs(), corrected.values());
                doc["corrected"] = evector_json(cor, *ctx);
            }
        } else {
            // links: flat tuple-indexed value lists
            auto dump_flat = [](const MultiEVector& v) {
                json arr = json::array();
                for (long long i = 0; i < v.values().size(); ++i) arr.push_back(jcplx(v.values()(i)));
                return arr;
            };
            if (show_raw) doc["raw_values"] = dump_flat(res.invariant);
            if (show_corrected) doc["corrected_values"] = dump_flat(corrected);
        }
    }

    int exit_code = 0;
    if (with_oracle) {
        OracleReport rep = dw_vs_homcount(montesinos_expr(spec), *ctx);
        json table = json::array();
        for (size_t i = 0; i < rep.hom_zero_framed.size(); ++i)
            table.push_back(json{{"hom_zero_framed", rep.hom_zero_framed[i]},
                                 {"hom_blackboard", rep.hom_blackboard[i]},
                                 {"dw_corrected", rep.dw_corrected[i]},
                                 {"dw_raw", rep.dw_raw[i]}});
        doc["oracle"] = json{{"table", table},
                             {"mismatches_corrected", rep.mismatches_corrected.size()},
                             {"mismatches_raw", rep.mismatches_raw.size()},
                             {"all_match", rep.all_match()}};
        std::string csv = "tuple,hom_zero_framed,hom_blackboard,dw_corrected,dw_raw\n";
        for (size_t i = 0; i < rep.hom_zero_framed.size(); ++i)
            csv += std::to_string(i) + "," + std::to_string(rep.hom_zero_framed[i]) + "," +
                   std::to_string(rep.hom_blackboard[i]) + "," +
                   std::to_string(rep.dw_corrected[i]) + "," + std::to_string(rep.dw_raw[i]) +
                   "\n";
        doc["csv"] = csv;
        if (!rep.all_match()) exit_code = 1;
    }
    emit(doc, format);
    return exit_code;
}

int cmd_colorings(long long n, const std::string& fractions, bool use_formula, bool use_dw,
                  bool use_oracle, double tol, const std::string& format) {
    if (n % 2 == 0) throw CLI::ValidationError("--n", "coloring counts are defined for odd n");
    MontesinosSpec spec = MontesinosSpec::parse(fractions);
    json doc{{"schema", 1},
             {"command", "colorings"},
             {"tolerance", tol},
             {"n", n},
             {"fractions", spec.to_string()}};
    std::vector<long long> results;
    if (use_formula) {
        long long v = coloring_count_formula(n, spec);
        doc["formula"] = v;
        results.push_back(v);
    }
    if (use_dw) {
        DihedralEngine eng(static_cast<int>(n));
        long long v = eng.coloring_count_via_dw(spec);
        doc["dw"] = v;
        results.push_back(v);
    }
    if (use_oracle) {
        MontesinosBuild mb = build_montesinos(spec);
        TangleAnalysis an(mb.closed);
        long long v = fox_count(diagram_from_analysis(an), n);
        doc["oracle"] = v;
        results.push_back(v);
    }
    bool agree = true;
    for (long long v : results) agree = agree && v == results[0];
    doc["agree"] = agree;
    std::string csv = "n,fractions,formula,dw,oracle,agree\n" + std::to_string(n) + "," +
                      spec.to_string() + ",";
    csv += (doc.contains("formula") ? std::to_string(doc["formula"].get<long long>()) : "") + ",";
    csv += (doc.contains("dw") ? std::to_string(doc["dw"].get<long long>()) : "") + ",";
    csv += (doc.contains("oracle") ? std::to_string(doc["oracle"].get<long long>()) : "") + ",";
    csv += (agree ? "yes" : "no");
    csv += "\n";
    doc["csv"] = csv;
    emit(doc, format);
    return agree ? 0 : 1;
}

int cmd_tangle(const std::string& expr_text, const std::string& colors_text,
               const std::string& group_spec, std::uint64_t seed, double tol,
               const std::string& format) {
    auto ctx = std::make_shared<CategoryContext>(build_named_group(group_spec), seed);
    TanglePtr expr = parse_tangle(expr_text);
    TangleAnalysis an(desugar(expr));
    std::vector<int> colors;
    std::stringstream ss(colors_text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) colors.push_back(std::stoi(item));
    if (static_cast<int>(colors.size()) != an.component_count())
        throw CLI::ValidationError("--colors", "need exactly " +
                                                   std::to_string(an.component_count()) +
                                                   " colors for this tangle");
    for (int c : colors)
        if (c < 0 || c >= ctx->simple_count())
            throw CLI::ValidationError("--colors", "color out of range");
    Morphism m = evaluate(an, colors, *ctx);
    json doc{{"schema", 1},
             {"command", "tangle"},
             {"tolerance", tol},
             {"group", group_spec},
             {"expression", expr_text},
             {"components", an.component_count()},
             {"writhe_total", an.total_writhe()},
             {"closed", an.closed()},
             {"morphism", morphism_json(m)}};
    if (an.closed()) {
        LinkInvariant z = dw_link_invariant(expr, *ctx);
        if (an.component_count() == 1) {
            EVector raw(ctx->pairs(), z.raw.values());
            doc["invariant_raw"] = evector_json(raw, *ctx);
            EVector cor(ctx->pairs(), z.writhe_corrected().values());
            doc["invariant_corrected"] = evector_json(cor, *ctx);
        }
    }
    emit(doc, format);
    return 0;
}

int cmd_homcount(const std::string& diagram_path, const std::string& group_spec,
                 const std::string& constraint_text, double tol, const std::string& format) {
    LinkDiagram d = read_diagram_file(diagram_path);
    auto g = build_named_group(group_spec);
    WirtingerPresentation p = wirtinger_presentation(d);
    json doc{{"schema", 1},
             {"command", "homcount"},
             {"tolerance", tol},
             {"group", group_spec},
             {"arcs", d.num_arcs},
             {"crossings", d.crossings.size()},
             {"components", d.num_components}};
    std::vector<std::optional<PeripheralConstraint>> cons;
    if (!constraint_text.empty()) {
        // format: "x:g" or "x:" per component, comma separated (element indices)
        cons.resize(d.num_components);
        std::stringstream ss(constraint_text);
        std::string item;
        int comp = 0;
        while (std::getline(ss, item, ',') && comp < d.num_components) {
            auto colon = item.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--constraints", "expected x:g entries");
            PeripheralConstraint pc;
            pc.meridian_image = std::stoi(item.substr(0, colon));
            std::string rest = item.substr(colon + 1);
            if (!rest.empty()) pc.longitude_image = std::stoi(rest);
            cons[comp++] = pc;
        }
    }
    doc["count"] = hom_count(p, *g, cons);
    emit(doc, format);
    return 0;
}

int cmd_selftest(std::uint64_t seed, double tol, const std::string& format) {
    json doc{{"schema", 1}, {"command", "selftest"}, {"tolerance", tol}, {"seed", seed}};

    // category sanity over a small sweep
    json cats = json::array();
    for (const char* g : {"Z2", "Z3", "S3", "D3"}) {
        auto ctx = std::make_shared<CategoryContext>(build_named_group(g), seed);
        long long sum_sq = 0;
        double gram = 0;
        for (int i = 0; i < ctx->simple_count(); ++i) {
            sum_sq += static_cast<long long>(ctx->dim_of(i)) * ctx->dim_of(i);
            for (int j = 0; j < ctx->simple_count(); ++j) {
                cplx ip = inner_product(ctx->chi(i), ctx->chi(j));
                gram = std::max(gram, std::abs(ip - (i == j ? cplx(1, 0) : cplx(0, 0))));
            }
        }
        cats.push_back(json{{"group", g},
                            {"simples", ctx->simple_count()},
                            {"sum_dim_squared", sum_sq},
                            {"gram_defect_under_tol", gram < kTol}});
    }
    doc["category"] = cats;

    // a Montesinos knot against the Wirtinger oracle
    {
        auto ctx = std::make_shared<CategoryContext>(build_named_group("S3"), seed);
        OracleReport rep = dw_vs_homcount(montesinos_expr(MontesinosSpec::parse("1,1,1")), *ctx);
        doc["trefoil_oracle_match"] = rep.all_match();
    }

    // coloring counts through all three routes
    {
        MontesinosSpec spec = MontesinosSpec::parse("1,1,1");
        DihedralEngine eng(3);
        MontesinosBuild mb = build_montesinos(spec);
        TangleAnalysis an(mb.closed);
        long long formula = coloring_count_formula(3, spec);
        long long dw = eng.coloring_count_via_dw(spec);
        long long fox = fox_count(diagram_from_analysis(an), 3);
        doc["colorings"] = json{{"formula", formula}, {"dw", dw}, {"oracle", fox}};
        doc["colorings_agree"] = formula == dw && dw == fox;
    }

    bool ok = doc["trefoil_oracle_match"].get<bool>() && doc["colorings_agree"].get<bool>();
    for (const auto& c : doc["category"]) ok = ok && c["gram_defect_under_tol"].get<bool>();
    doc["ok"] = ok;
    emit(doc, format);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dijkgraaf-Witten link invariants from the quantum double of a finite group"};
    app.require_subcommand(1);

    std::string group = "D3", fractions, expr, colors, diagram, constraints;
    std::string format = "json";
    std::uint64_t seed = 0;
    long long n = 3;
    bool with_oracle = false, use_formula = false, use_dw = false, use_oracle_count = false;
    bool show_raw = false, show_corrected = false;
    double tol = default_tolerance();

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "json, csv, or pretty")->default_val("json");
        cmd->add_option("--seed", seed, "seed for the deterministic solvers")->default_val("0");
        cmd->add_option("--tol", tol, "numeric tolerance override");
    };

    CLI::App* simples = app.add_subcommand("simples", "list the simple objects of a group");
    simples->add_option("--group", group, "group spec (Zn, Dn, S3, S4, Q8, file:PATH)")->required();
    add_common(simples);

    CLI::App* monte = app.add_subcommand("montesinos", "invariant of a Montesinos link");
    monte->add_option("--group", group)->required();
    monte->add_option("--fractions", fractions, "comma-separated p/q list")->required();
    monte->add_flag("--oracle", with_oracle, "compare against the Wirtinger oracle");
    monte->add_flag("--raw", show_raw, "dump only the raw (blackboard-framed) table");
    monte->add_flag("--corrected", show_corrected, "dump only the corrected table");
    add_common(monte);

    CLI::App* col = app.add_subcommand("colorings", "n-coloring counts of a Montesinos knot");
    col->add_option("--n", n, "odd modulus")->required();
    col->add_option("--fractions", fractions)->required();
    col->add_flag("--formula", use_formula, "arithmetic count");
    col->add_flag("--dw", use_dw, "count through the invariant");
    col->add_flag("--oracle", use_oracle_count, "count through the coloring matrix");
    add_common(col);

    CLI::App* tangle = app.add_subcommand("tangle", "evaluate a tangle expression");
    tangle->add_option("--expr", expr, "tangle DSL expression")->required();
    tangle->add_option("--colors", colors, "comma-separated simple ordinals per component")
        ->required();
    tangle->add_option("--group", group)->required();
    add_common(tangle);

    CLI::App* hom = app.add_subcommand("homcount", "count homomorphisms from a diagram file");
    hom->add_option("--diagram", diagram, "diagram file path")->required();
    hom->add_option("--group", group)->required();
    hom->add_option("--constraints", constraints, "per-component x:g element indices");
    add_common(hom);

    CLI::App* self = app.add_subcommand("selftest", "deterministic end-to-end check");
    add_common(self);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simples->parsed()) return cmd_simples(group, seed, tol, format);
        if (monte->parsed()) {
            if (!show_raw && !show_corrected) show_raw = show_corrected = true;
            return cmd_montesinos(group, fractions, with_oracle, show_raw, show_corrected, seed,
                                  tol, format);
        }
        if (col->parsed()) {
            if (!use_formula && !use_dw && !use_oracle_count)
                use_formula = use_dw = use_oracle_count = true;
            return cmd_colorings(n, fractions, use_formula, use_dw, use_oracle_count, tol, format);
        }
        if (tangle->parsed()) return cmd_tangle(expr, colors, group, seed, tol, format);
        if (hom->parsed()) return cmd_homcount(diagram, group, constraints, tol, format);
        if (self->parsed()) return cmd_selftest(seed, tol, format);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
