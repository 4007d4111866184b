// Command-line front end: runs the analysis pipeline on a JSON problem file.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reflmap/curveinv.hpp"
#include "reflmap/problem.hpp"

using namespace reflmap;
using nlohmann::json;

namespace {

struct Options {
    std::string file;
    bool as_json = false;
    long max_group_order = 1024;
    long step_budget = 1'000'000;
    std::string ordering = "paper";
    long sigma = -1;
};

ReportOrdering ordering_mode(const Options& opt) {
    if (opt.ordering == "paper") return ReportOrdering::paper;
    if (opt.ordering == "table") return ReportOrdering::table;
    throw parse_error("--ordering must be 'paper' or 'table'", 0);
}

int cmd_info(const Options& opt) {
    Problem prob = load_problem(opt.file, opt.max_group_order);
    const ReflGroup& g = *prob.group;
    if (opt.as_json) {
        json out;
        out["order"] = g.order();
        out["reflections"] = g.reflection_indices().size();
        json fix = json::array();
        for (std::size_t e = 0; e < g.order(); ++e)
            fix.push_back(g.elem(static_cast<int>(e)).fix_dim);
        out["fix_dims"] = fix;
        out["omega_verified"] = prob.orbit_check.ok;
        out["failures"] = prob.orbit_check.failures;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "order " << g.order() << ", reflections "
                  << g.reflection_indices().size() << ", omega "
                  << (prob.orbit_check.ok ? "verified" : "FAILED") << "\n";
        std::cout << "fix dims:";
        for (std::size_t e = 0; e < g.order(); ++e)
            std::cout << " " << g.elem(static_cast<int>(e)).fix_dim;
        std::cout << "\n";
        for (const auto& f : prob.orbit_check.failures)
            std::cout << "check failed: " << f << "\n";
    }
    return prob.orbit_check.ok ? 0 : 2;
}

int cmd_degree(const Options& opt) {
    Problem prob = load_problem(opt.file, opt.max_group_order);
    Budget budget(opt.step_budget);
    DegreeInfo info = degree(prob.map, budget);
    if (opt.as_json) {
        json out;
        out["degree"] = info.degree;
        out["setwise_order"] = info.setwise.size();
        out["pointwise_order"] = info.pointwise.size();
        out["setwise"] = info.setwise;
        out["pointwise"] = info.pointwise;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "degree " << info.degree << " (setwise " << info.setwise.size()
                  << ", pointwise " << info.pointwise.size() << ")\n";
    }
    return 0;
}

int cmd_image(const Options& opt) {
    Problem prob = load_problem(opt.file, opt.max_group_order);
    Budget budget(opt.step_budget);
    Poly g = image_equation(prob.map, budget);
    if (opt.as_json) {
        json out;
        out["g"] = g.str();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << g.str() << "\n";
    }
    return 0;
}

int cmd_branches(const Options& opt) {
    Problem prob = load_problem(opt.file, opt.max_group_order);
    Budget budget(opt.step_budget);
    std::vector<int> order = report_ordering(*prob.group, ordering_mode(opt));
    json jout = json::array();
    bool hyper = prob.map.L.size() == 1;
    for (int e : order) {
        if (hyper) {
            BranchIdeal b = branch_lambda(prob.map, e, budget);
            if (opt.as_json) {
                json jb;
                jb["sigma"] = e;
                jb["reflection"] = b.is_reflection;
                jb["lambda"] = b.lambda.str();
                jb["empty"] = b.empty;
                jout.push_back(jb);
            } else {
                std::cout << "sigma " << e << (b.is_reflection ? " (reflection)" : "")
                          << ": lambda = " << b.lambda.str()
                          << (b.empty ? "  [empty]" : "") << "\n";
            }
        } else {
            DSigmaInfo d = dsigma_ideal(prob.map, e, budget);
            if (opt.as_json) {
                json jb;
                jb["sigma"] = e;
                jb["reflection"] = d.is_reflection;
                jb["dim"] = d.dim;
                jout.push_back(jb);
            } else {
                std::cout << "sigma " << e << (d.is_reflection ? " (reflection)" : "")
                          << ": dim " << d.dim
                          << (d.dim < 0 ? "  [empty]" : "") << "\n";
            }
        }
    }
    if (opt.as_json) std::cout << jout.dump(2) << "\n";
    return 0;
}

std::string enc(long v, bool known = true) {
    if (!known) return "?";
    return std::to_string(v);
}

int cmd_invariants(const Options& opt) {
    Problem prob = load_problem(opt.file, opt.max_group_order);
    Budget budget(opt.step_budget);
    InvariantReport rep = full_report(prob.map, budget, ordering_mode(opt));
    std::size_t m = rep.ordering.size();
    if (opt.as_json) {
        json out;
        out["ordering"] = rep.ordering;
        out["M"] = rep.M;
        json jd = json::array();
        for (std::size_t i = 0; i < m; ++i) {
            if (rep.delta_known[i]) jd.push_back(rep.Delta[i]);
            else jd.push_back(json{{"unknown", rep.delta_reason[i]}});
        }
        out["Delta"] = jd;
        out["I"] = rep.I;
        out["empty_branches"] = rep.k;
        out["finite"] = rep.finite;
        if (rep.mu_known) out["mu"] = rep.mu_total;
        else out["mu"] = "not A-finite";
        if (rep.delta_total_known) out["delta"] = rep.delta_total;
        else out["delta"] = rep.finite ? "unknown" : "not A-finite";
        if (rep.branch_total_known) out["branches"] = rep.branch_total;
        else out["branches"] = rep.finite ? "unknown" : "not A-finite";
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "ordering:";
        for (int e : rep.ordering) std::cout << " " << e;
        std::cout << "\nM     =";
        for (long v : rep.M) std::cout << " " << v;
        std::cout << "\nDelta =";
        for (std::size_t i = 0; i < m; ++i)
            std::cout << " " << enc(rep.Delta[i], rep.delta_known[i]);
        std::cout << "\nI:\n";
        for (std::size_t i = 0; i < m; ++i) {
            std::cout << " ";
            for (std::size_t j = 0; j < m; ++j) std::cout << " " << rep.I[i][j];
            std::cout << "\n";
        }
        std::cout << "empty branches: " << rep.k << "\n";
        std::cout << "finite: " << (rep.finite ? "yes" : "no") << "\n";
        std::cout << "mu = " << (rep.mu_known ? enc(rep.mu_total) : "not A-finite") << "\n";
        std::cout << "delta = "
                  << (rep.delta_total_known ? enc(rep.delta_total)
                                            : (rep.finite ? "unknown" : "not A-finite"))
                  << "\n";
        std::cout << "branches = "
                  << (rep.branch_total_known ? enc(rep.branch_total)
                                             : (rep.finite ? "unknown" : "not A-finite"))
                  << "\n";
    }
    return 0;
}

int cmd_k2(const Options& opt) {
    Problem prob = load_problem(opt.file, opt.max_group_order);
    Budget budget(opt.step_budget);
    if (opt.sigma <= 0 || opt.sigma >= static_cast<long>(prob.group->order()))
        throw math_error("--sigma must be a non-identity element index");
    K2Report rep = k2sigma_charts(prob.map, static_cast<int>(opt.sigma), budget);
    if (opt.as_json) {
        json out;
        out["sigma"] = rep.sigma;
        json charts = json::array();
        for (const auto& c : rep.charts)
            charts.push_back({{"chart", c.chart}, {"dim", c.dim}, {"exc_dim", c.exc_dim}});
        out["charts"] = charts;
        out["empty"] = rep.empty;
        out["dim"] = rep.dim;
        out["exceptional_dim"] = rep.exc_dim;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "sigma " << rep.sigma << ":";
        if (rep.empty) std::cout << " empty\n";
        else std::cout << " dim " << rep.dim << ", exceptional dim " << rep.exc_dim << "\n";
        for (const auto& c : rep.charts)
            std::cout << "  chart v_" << c.chart + 1 << "=1: dim " << c.dim
                      << ", exceptional dim " << c.exc_dim << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic toolkit for reflection mappings"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_sigma = false) {
        sub->add_option("file", opt.file, "problem file (JSON)")->required();
        sub->add_flag("--json", opt.as_json, "machine-readable output");
        sub->add_option("--max-group-order", opt.max_group_order, "group closure cap");
        sub->add_option("--step-budget", opt.step_budget, "reduction step budget");
        sub->add_option("--ordering", opt.ordering, "report ordering: paper|table");
        if (needs_sigma)
            sub->add_option("--sigma", opt.sigma, "group element index")->required();
    };
    CLI::App* info = app.add_subcommand("info", "group and orbit map summary");
    CLI::App* deg = app.add_subcommand("degree", "degree and stabilizer orders");
    CLI::App* image = app.add_subcommand("image", "image equation g");
    CLI::App* branches = app.add_subcommand("branches", "double point branches");
    CLI::App* invariants = app.add_subcommand("invariants", "Milnor/delta report");
    CLI::App* k2 = app.add_subcommand("k2", "K2^sigma chart dimensions");
    add_common(info);
    add_common(deg);
    add_common(image);
    add_common(branches);
    add_common(invariants);
    add_common(k2, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed()) return cmd_info(opt);
        if (deg->parsed()) return cmd_degree(opt);
        if (image->parsed()) return cmd_image(opt);
        if (branches->parsed()) return cmd_branches(opt);
        if (invariants->parsed()) return cmd_invariants(opt);
        if (k2->parsed()) return cmd_k2(opt);
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const math_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
