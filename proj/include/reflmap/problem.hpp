#ifndef REFLMAP_PROBLEM_HPP
#define REFLMAP_PROBLEM_HPP

#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "reflmap/errors.hpp"
#include "reflmap/group.hpp"
#include "reflmap/parser.hpp"
#include "reflmap/refmap.hpp"

namespace reflmap {

struct Problem {
    FieldPtr field;
    CtxPtr ctx;
    GroupPtr group;
    ReflMapping map;
    OrbitCheck orbit_check;
};

namespace detail {

using nlohmann::json;

inline std::string require_string(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_string())
        throw parse_error("problem file: missing string field '" + key + "'", 0);
    return j[key].get<std::string>();
}

inline std::vector<std::string> string_list(const json& j) {
    if (!j.is_array()) throw parse_error("problem file: expected an array", 0);
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw parse_error("problem file: expected strings", 0);
        out.push_back(e.get<std::string>());
    }
    return out;
}

// Pad a k x k matrix to act on p coordinates (identity on the rest).
inline CycloMatrix pad_matrix(const CycloMatrix& m, std::size_t p, const FieldPtr& f) {
    std::size_t k = m.size();
    CycloMatrix out = identity_matrix(f, p);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) out[i][j] = m[i][j];
    return out;
}

} // namespace detail

inline Problem load_problem(const std::string& path, long max_group_order) {
    using nlohmann::json;
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open problem file '" + path + "'", 0);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what(), 0);
    }

    Problem prob;
    if (!j.contains("conductor") || !j["conductor"].is_number_integer())
        throw parse_error("problem file: missing integer 'conductor'", 0);
    prob.field = make_field(j["conductor"].get<long>());

    if (!j.contains("variables") || !j["variables"].is_object())
        throw parse_error("problem file: missing 'variables' object", 0);
    const json& jv = j["variables"];
    std::vector<std::string> names;
    std::vector<VarRole> roles;
    auto add_vars = [&](const char* key, VarRole role, bool required) {
        if (!jv.contains(key)) {
            if (required)
                throw parse_error(std::string("problem file: missing variables.") + key, 0);
            return;
        }
        for (auto& n : detail::string_list(jv[key])) {
            names.push_back(std::move(n));
            roles.push_back(role);
        }
    };
    add_vars("space", VarRole::space, true);
    add_vars("target", VarRole::target, false);
    add_vars("parameters", VarRole::parameter, false);
    prob.ctx = std::make_shared<VarContext>(names, roles);
    std::vector<std::size_t> space = prob.ctx->with_role(VarRole::space);
    std::size_t p = space.size();

    auto parse = [&](const std::string& text) {
        return parse_poly(text, prob.ctx, prob.field);
    };

    // group: builtin name or explicit generator matrices; acts on the
    // leading space variables, identity on any remaining ones
    if (!j.contains("group") || !j["group"].is_object())
        throw parse_error("problem file: missing 'group' object", 0);
    const json& jg = j["group"];
    std::vector<Poly> omega;
    std::shared_ptr<ReflGroup> group;
    if (jg.contains("builtin")) {
        std::string name = detail::require_string(jg, "builtin");
        if (name == "cyclic_product") {
            if (!jg.contains("degrees") || !jg["degrees"].is_array())
                throw parse_error("cyclic_product needs a 'degrees' array", 0);
            std::vector<long> degrees;
            for (const auto& d : jg["degrees"]) degrees.push_back(d.get<long>());
            std::size_t k = degrees.size();
            if (k > p) throw parse_error("more degrees than space variables", 0);
            if (k == p) {
                group = std::make_shared<ReflGroup>(
                    ReflGroup::cyclic_product(degrees, prob.field, prob.ctx, space));
            } else {
                // padded action: close from the padded diagonal generators
                std::vector<CycloMatrix> gens;
                long n = prob.field->conductor();
                for (std::size_t i = 0; i < k; ++i) {
                    if (degrees[i] < 1 || n % degrees[i] != 0)
                        throw math_error("conductor not divisible by degree " +
                                         std::to_string(degrees[i]));
                    CycloMatrix m = identity_matrix(prob.field, p);
                    m[i][i] = CycloElem::zeta(prob.field, n / degrees[i]);
                    gens.push_back(std::move(m));
                }
                group = std::make_shared<ReflGroup>(
                    ReflGroup::close(gens, prob.field, prob.ctx, space, max_group_order));
            }
            for (std::size_t i = 0; i < k; ++i)
                omega.push_back(Poly::variable(prob.ctx, prob.field, space[i],
                                               static_cast<int>(degrees[i])));
        } else if (name == "dihedral_D8" || name == "tetrahedral_S4") {
            long n = prob.field->conductor();
            if (n % 8 != 0)
                throw math_error("builtin '" + name + "' needs 8 | conductor");
            auto zeta8 = [&](long k) { return CycloElem::zeta(prob.field, k * (n / 8)); };
            CycloElem one = CycloElem::one(prob.field);
            CycloElem zero = CycloElem::zero(prob.field);
            CycloElem minus = -one;
            std::vector<CycloMatrix> gens;
            std::size_t k = 0;
            std::vector<std::string> omega_text;
            if (name == "dihedral_D8") {
                k = 2;
                if (p < 2) throw parse_error("dihedral_D8 needs 2 space variables", 0);
                gens.push_back(detail::pad_matrix({{one, zero}, {zero, minus}}, p, prob.field));
                gens.push_back(detail::pad_matrix({{zero, minus}, {one, zero}}, p, prob.field));
                const std::string& u = prob.ctx->name(space[0]);
                const std::string& v = prob.ctx->name(space[1]);
                omega_text = {u + "^2+" + v + "^2", u + "^2*" + v + "^2"};
            } else {
                k = 3;
                if (p < 3) throw parse_error("tetrahedral_S4 needs 3 space variables", 0);
                CycloElem r2 = zeta8(1) - zeta8(3);  // sqrt(2)
                CycloElem h = CycloElem::rational(prob.field, Rat(1, 2));
                CycloElem mh = -h;
                CycloElem mr2h = -(r2 * h);
                gens.push_back(detail::pad_matrix(
                    {{minus, zero, zero}, {zero, one, zero}, {zero, zero, one}}, p, prob.field));
                gens.push_back(detail::pad_matrix(
                    {{h, mh, mr2h}, {mh, h, mr2h}, {mr2h, mr2h, zero}}, p, prob.field));
                gens.push_back(detail::pad_matrix(
                    {{one, zero, zero}, {zero, minus, zero}, {zero, zero, one}}, p, prob.field));
                const std::string& u = prob.ctx->name(space[0]);
                const std::string& v = prob.ctx->name(space[1]);
                const std::string& w = prob.ctx->name(space[2]);
                omega_text = {
                    u + "^2+" + v + "^2+" + w + "^2",
                    "(" + u + "+" + v + ")*(" + u + "-" + v + ")*" + w,
                    "(2*" + u + "^2-" + w + "^2)*(2*" + v + "^2-" + w + "^2)"};
            }
            group = std::make_shared<ReflGroup>(
                ReflGroup::close(gens, prob.field, prob.ctx, space, max_group_order));
            for (const auto& t : omega_text) omega.push_back(parse(t));
        } else {
            throw parse_error("unknown builtin group '" + name + "'", 0);
        }
    } else if (jg.contains("generators")) {
        std::vector<CycloMatrix> gens;
        for (const auto& jm : jg["generators"]) {
            CycloMatrix m;
            for (const auto& jrow : jm) {
                std::vector<CycloElem> row;
                for (const auto& je : jrow)
                    row.push_back(parse_cyclo(je.get<std::string>(), prob.field));
                m.push_back(std::move(row));
            }
            if (m.size() > p || (!m.empty() && m[0].size() != m.size()))
                throw parse_error("generator matrices must be square, at most p x p", 0);
            gens.push_back(detail::pad_matrix(m, p, prob.field));
        }
        group = std::make_shared<ReflGroup>(
            ReflGroup::close(gens, prob.field, prob.ctx, space, max_group_order));
    } else {
        throw parse_error("group needs 'builtin' or 'generators'", 0);
    }

    // explicit omega components override/extend the builtin ones
    if (j.contains("omega")) {
        omega.clear();
        for (const auto& t : detail::string_list(j["omega"])) omega.push_back(parse(t));
    } else {
        // extend with the untouched space coordinates
        for (std::size_t i = omega.size(); i < p; ++i)
            omega.push_back(Poly::variable(prob.ctx, prob.field, space[i]));
    }
    if (omega.size() != p)
        throw parse_error("omega must have one component per space variable", 0);

    std::vector<Poly> L;
    if (j.contains("hypersurface"))
        for (const auto& t : detail::string_list(j["hypersurface"])) L.push_back(parse(t));
    if (L.empty()) throw parse_error("problem file: missing 'hypersurface' equations", 0);

    // substitutions: parameter -> cyclotomic constant, applied to L
    if (j.contains("substitutions")) {
        std::vector<std::optional<Poly>> images(prob.ctx->size());
        for (const auto& [key, val] : j["substitutions"].items()) {
            int vi = prob.ctx->find(key);
            if (vi < 0 || prob.ctx->role(static_cast<std::size_t>(vi)) != VarRole::parameter)
                throw parse_error("substitution target '" + key + "' is not a parameter", 0);
            CycloElem c = parse_cyclo(val.get<std::string>(), prob.field);
            images[static_cast<std::size_t>(vi)] =
                Poly::constant(prob.ctx, prob.field, c);
        }
        for (auto& l : L) l = substitute_same(l, images);
    }

    prob.group = group;
    prob.map.group = group;
    prob.map.omega = omega;
    prob.map.L = std::move(L);

    if (j.contains("chart")) {
        const json& jc = j["chart"];
        std::vector<std::string> cvars = detail::string_list(jc.at("variables"));
        std::vector<VarRole> croles(cvars.size(), VarRole::space);
        CtxPtr cctx = std::make_shared<VarContext>(cvars, croles);
        ChartSpec chart;
        chart.ctx = cctx;
        for (const auto& t : detail::string_list(jc.at("images")))
            chart.images.push_back(parse_poly(t, cctx, prob.field));
        prob.map.chart = std::move(chart);
        verify_chart(prob.map);
    }

    prob.orbit_check = verify_orbit_map(*group, omega);
    return prob;
}

} // namespace reflmap

#endif
