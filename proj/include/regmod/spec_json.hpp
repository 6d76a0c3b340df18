#pragma once

#include "regmod/collection.hpp"

namespace regmod {

/// Malformed document or schema violation (usage error, exit code 2).
struct SpecParseError : std::runtime_error {
    explicit SpecParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Well-formed spec that violates a semantic requirement, e.g. a base point
/// outside one of the sets (exit code 3).
struct SpecSemanticError : std::runtime_error {
    explicit SpecSemanticError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses a set-specification document:
///   {"space":{"dim":2},
///    "sets":[{"kind":"halfspace","normal":[0,1],"offset":0}, ...],
///    "point":[0,0]}
/// Kinds: halfspace, poly_graph, poly_sublevel, union, intersection,
/// whole_space, translate. {"preset":"example-2.1"} expands a built-in
/// collection.
SetCollection load_collection_text(const std::string& text, const std::string& source_name);

SetCollection load_collection_file(const std::string& path);

}  // namespace regmod
