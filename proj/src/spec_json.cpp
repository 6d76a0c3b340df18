#include "regmod/spec_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "regmod/presets.hpp"

namespace regmod {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw SpecParseError(where + ": " + what);
}

Vec parse_vec(const json& j, const std::string& where, int expect_dim) {
    if (!j.is_array()) fail(where, "expected an array of numbers");
    Vec v;
    for (const auto& c : j) {
        if (!c.is_number()) fail(where, "expected an array of numbers");
        v.push_back(c.get<double>());
    }
    if (expect_dim > 0 && static_cast<int>(v.size()) != expect_dim) {
        fail(where, "expected " + std::to_string(expect_dim) + " coordinates");
    }
    return v;
}

std::array<double, 3> parse_poly(const json& j, const std::string& where) {
    if (j.contains("coeffs")) {
        const Vec c = parse_vec(j.at("coeffs"), where + ".coeffs", 0);
        if (c.size() != 3) fail(where + ".coeffs", "expected [a, b, c] for v = a u^2 + b u + c");
        return {c[0], c[1], c[2]};
    }
    if (j.contains("coefficient")) {
        const double coeff = j.at("coefficient").get<double>();
        const double sign = j.contains("sign") ? j.at("sign").get<double>() : 1.0;
        return {sign * coeff, 0.0, 0.0};
    }
    fail(where, "expected 'coeffs' or 'coefficient'");
}

SetOracle parse_set(const json& j, const std::string& where, int dim, double tol) {
    if (!j.is_object()) fail(where, "expected an object");
    if (!j.contains("kind")) fail(where, "missing 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "halfspace") {
        if (!j.contains("normal")) fail(where, "halfspace needs 'normal'");
        const Vec normal = parse_vec(j.at("normal"), where + ".normal", dim);
        const double offset = j.contains("offset") ? j.at("offset").get<double>() : 0.0;
        return SetOracle::halfspace(normal, offset, tol);
    }
    if (kind == "poly_graph") {
        if (dim != 2) fail(where, "poly_graph requires dim = 2");
        return SetOracle::poly_graph(parse_poly(j, where), tol);
    }
    if (kind == "poly_sublevel") {
        if (dim != 2) fail(where, "poly_sublevel requires dim = 2");
        const std::string rel =
            j.contains("relation") ? j.at("relation").get<std::string>() : "le";
        if (rel != "le" && rel != "ge") fail(where + ".relation", "expected 'le' or 'ge'");
        return SetOracle::poly_sublevel(
            parse_poly(j, where),
            rel == "le" ? SublevelSide::kBelow : SublevelSide::kAbove, tol);
    }
    if (kind == "whole_space") return SetOracle::whole_space(dim, tol);
    if (kind == "union" || kind == "intersection") {
        if (!j.contains("branches") || !j.at("branches").is_array() ||
            j.at("branches").empty()) {
            fail(where, kind + " needs a nonempty 'branches' array");
        }
        std::vector<SetOracle> branches;
        int idx = 0;
        for (const auto& b : j.at("branches")) {
            branches.push_back(
                parse_set(b, where + ".branches[" + std::to_string(idx++) + "]", dim, tol));
        }
        return kind == "union" ? SetOracle::union_of(std::move(branches))
                               : SetOracle::intersection_of(std::move(branches));
    }
    if (kind == "translate") {
        if (!j.contains("base")) fail(where, "translate needs 'base'");
        if (!j.contains("shift")) fail(where, "translate needs 'shift'");
        const SetOracle base = parse_set(j.at("base"), where + ".base", dim, tol);
        return base.translated(parse_vec(j.at("shift"), where + ".shift", dim));
    }
    fail(where + ".kind", "unknown set kind '" + kind + "'");
}

}  // namespace

SetCollection load_collection_text(const std::string& text, const std::string& source_name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) {
            if (text[i] == '\n') ++line;
        }
        throw SpecParseError(source_name + ":" + std::to_string(line) + ": " + e.what());
    }
    if (!doc.is_object()) throw SpecParseError(source_name + ": expected a JSON object");

    if (doc.contains("preset")) {
        const std::string id = doc.at("preset").get<std::string>();
        if (!is_preset(id)) fail("preset", "unknown preset '" + id + "'");
        return make_preset(id);
    }

    int dim = 2;
    if (doc.contains("space")) {
        const json& space = doc.at("space");
        if (!space.is_object() || !space.contains("dim")) fail("space", "needs 'dim'");
        dim = space.at("dim").get<int>();
        if (dim < 1) fail("space.dim", "dimension must be positive");
        if (space.contains("factor_norm") &&
            space.at("factor_norm").get<std::string>() != "euclidean") {
            fail("space.factor_norm", "only the euclidean factor norm is supported");
        }
    }
    const double tol =
        doc.contains("tolerance") ? doc.at("tolerance").get<double>() : kMembershipTol;
    if (tol <= 0.0) fail("tolerance", "must be positive");

    if (!doc.contains("sets") || !doc.at("sets").is_array() || doc.at("sets").size() < 2) {
        fail("sets", "at least two sets are required");
    }
    SetCollection coll;
    coll.space = SpaceConfig{dim};
    coll.name = source_name;
    int idx = 0;
    for (const auto& s : doc.at("sets")) {
        coll.sets.push_back(parse_set(s, "sets[" + std::to_string(idx++) + "]", dim, tol));
    }
    if (!doc.contains("point")) fail("point", "missing base point");
    coll.base_point = parse_vec(doc.at("point"), "point", dim);

    try {
        coll.validate();
    } catch (const PreconditionError& e) {
        throw SpecSemanticError(source_name + ": " + e.what());
    }
    return coll;
}

SetCollection load_collection_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_collection_text(buf.str(), path);
}

}  // namespace regmod
