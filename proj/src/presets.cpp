#include "regmod/presets.hpp"

namespace regmod {

namespace {

std::string canonical(const std::string& id) {
    if (id == "2.1" || id == "example-2.1") return "example-2.1";
    if (id == "2.2" || id == "example-2.2") return "example-2.2";
    if (id == "2.3" || id == "example-2.3") return "example-2.3";
    if (id == "2.4" || id == "example-2.4") return "example-2.4";
    if (id == "halfspaces" || id == "orthants") return "halfspaces";
    return "";
}

}  // namespace

SetCollection make_preset(const std::string& id) {
    const std::string name = canonical(id);
    SetCollection coll;
    coll.space = SpaceConfig{2};
    coll.base_point = {0.0, 0.0};
    coll.name = name;

    const SetOracle left = SetOracle::halfspace({-1.0, 0.0}, 0.0);          // {u <= 0}
    const SetOracle upper = SetOracle::halfspace({0.0, 1.0}, 0.0);          // {v >= 0}
    const SetOracle right = SetOracle::halfspace({1.0, 0.0}, 0.0);          // {u >= 0}
    const SetOracle below_up = SetOracle::poly_sublevel({1, 0, 0}, SublevelSide::kBelow);
    const SetOracle above_up = SetOracle::poly_sublevel({1, 0, 0}, SublevelSide::kAbove);
    const SetOracle below_dn = SetOracle::poly_sublevel({-1, 0, 0}, SublevelSide::kBelow);

    if (name == "example-2.1") {
        coll.sets = {upper, below_up};
    } else if (name == "example-2.2") {
        coll.sets = {SetOracle::poly_graph({1, 0, 0}), SetOracle::poly_graph({-1, 0, 0})};
    } else if (name == "example-2.3") {
        coll.sets = {SetOracle::union_of({left, above_up}),
                     SetOracle::union_of({left, below_dn})};
    } else if (name == "example-2.4") {
        coll.sets = {SetOracle::union_of({left, above_up, below_dn}),
                     SetOracle::whole_space(2)};
    } else if (name == "halfspaces") {
        coll.sets = {upper, right};
    } else {
        throw PreconditionError("unknown preset '" + id + "'");
    }
    coll.validate();
    return coll;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"example-2.1", "example-2.2", "example-2.3",
                                                   "example-2.4", "halfspaces"};
    return names;
}

bool is_preset(const std::string& id) { return !canonical(id).empty(); }

}  // namespace regmod
