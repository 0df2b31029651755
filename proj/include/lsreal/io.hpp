#pragma once

#include <string>

#include "json.hpp"
#include "lsreal/lss.hpp"
#include "lsreal/markov.hpp"

namespace lsreal::io {

using Json = nlohmann::json;

/// System file:
///   {"modes": [...], "n": n, "m": m, "p": p,
///    "systems": {mode: {"A": [[...]], "B": [[...]], "C": [[...]]}},
///    "initial_states": {tag: [x1, ..., xn]}}
/// Matrices are row-major nested arrays. Throws ParseError.
Realization parse_system(const Json& doc);
Json system_to_json(const Realization& r);

/// Markov file:
///   {"modes", "p", "m", "max_order",
///    "entries": [{"index": {"kind": "input", "q0": mode, "j": 1-based}
///                        | {"kind": "state", "f": tag},
///                 "word": [modes...], "value": [p·D numbers]}]}
/// Every (index, word) pair up to max_order must appear exactly once.
MarkovFamily parse_markov(const Json& doc);
Json markov_to_json(const MarkovFamily& mk);

Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols,
                                 const std::string& what);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

enum class FileKind { System, Markov };
/// Distinguishes the two document types by their keys.
FileKind detect_kind(const Json& doc);

}  // namespace lsreal::io
