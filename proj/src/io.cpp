#include "lsreal/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>

#include "lsreal/errors.hpp"

namespace lsreal::io {

namespace {

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object()) throw ParseError("expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

int integer(const Json& j, const std::string& what, int min) {
  if (!j.is_number_integer()) throw ParseError(what + " must be an integer");
  const auto v = j.get<long long>();
  if (v < min || v > 1'000'000) throw ParseError(what + " out of range");
  return static_cast<int>(v);
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(what + " must be finite");
  return v;
}

Alphabet parse_modes(const Json& doc) {
  const Json& modes = field(doc, "modes");
  if (!modes.is_array() || modes.empty()) throw ParseError("'modes' must be a nonempty array");
  std::vector<std::string> names;
  for (const auto& m : modes) {
    if (!m.is_string()) throw ParseError("mode names must be strings");
    names.push_back(m.get<std::string>());
  }
  try {
    return Alphabet(std::move(names));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Json vector_to_json(const double* v, Eigen::Index len) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < len; ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::MatrixXd matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols,
                                 const std::string& what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw ParseError(what + " must have " + std::to_string(rows) + " rows");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError(what + " row " + std::to_string(r + 1) + " must have " +
                       std::to_string(cols) + " entries");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = number(row[static_cast<std::size_t>(c)], what);
  }
  return m;
}

Realization parse_system(const Json& doc) {
  const Alphabet alphabet = parse_modes(doc);
  const int n = integer(field(doc, "n"), "n", 0);
  const int m = integer(field(doc, "m"), "m", 1);
  const int p = integer(field(doc, "p"), "p", 1);
  const Json& systems = field(doc, "systems");
  if (!systems.is_object()) throw ParseError("'systems' must be an object");
  if (systems.size() != alphabet.size())
    throw ParseError("'systems' must have exactly one entry per mode");

  std::vector<ModeTriple> modes;
  for (const auto& name : alphabet.names()) {
    auto it = systems.find(name);
    if (it == systems.end()) throw ParseError("no matrices for mode '" + name + "'");
    ModeTriple t;
    t.A = matrix_from_json(field(*it, "A"), n, n, name + ".A");
    t.B = matrix_from_json(field(*it, "B"), n, m, name + ".B");
    t.C = matrix_from_json(field(*it, "C"), p, n, name + ".C");
    modes.push_back(std::move(t));
  }

  std::map<std::string, Eigen::VectorXd> mu;
  if (auto it = doc.find("initial_states"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("'initial_states' must be an object");
    for (const auto& [tag, value] : it->items()) {
      if (tag.empty()) throw ParseError("initial-state tags must be nonempty");
      if (!value.is_array() || static_cast<int>(value.size()) != n)
        throw ParseError("initial state '" + tag + "' must have " + std::to_string(n) + " entries");
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x(i) = number(value[static_cast<std::size_t>(i)], tag);
      mu.emplace(tag, std::move(x));
    }
  }
  try {
    return Realization(Lss(alphabet, std::move(modes)), std::move(mu));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Json system_to_json(const Realization& r) {
  const Lss& sys = r.sys();
  Json doc;
  doc["modes"] = sys.alphabet().names();
  doc["n"] = sys.n();
  doc["m"] = sys.m();
  doc["p"] = sys.p();
  Json systems = Json::object();
  for (std::size_t q = 0; q < sys.mode_count(); ++q) {
    const int k = static_cast<int>(q);
    systems[sys.alphabet().name(k)] = {{"A", matrix_to_json(sys.A(k))},
                                       {"B", matrix_to_json(sys.B(k))},
                                       {"C", matrix_to_json(sys.C(k))}};
  }
  doc["systems"] = std::move(systems);
  Json states = Json::object();
  for (const auto& [tag, x] : r.mu()) states[tag] = vector_to_json(x.data(), x.size());
  doc["initial_states"] = std::move(states);
  return doc;
}

MarkovFamily parse_markov(const Json& doc) {
  const Alphabet alphabet = parse_modes(doc);
  const int p = integer(field(doc, "p"), "p", 1);
  const int m = integer(field(doc, "m"), "m", 1);
  const int max_order = integer(field(doc, "max_order"), "max_order", 0);
  const Json& entries = field(doc, "entries");
  if (!entries.is_array()) throw ParseError("'entries' must be an array");

  std::vector<std::string> tags;
  for (const auto& e : entries) {
    const Json& idx = field(e, "index");
    if (field(idx, "kind") == "state") {
      const Json& f = field(idx, "f");
      if (!f.is_string() || f.get<std::string>().empty())
        throw ParseError("state index needs a nonempty tag 'f'");
      tags.push_back(f.get<std::string>());
    }
  }
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());

  const std::size_t d = alphabet.size();
  std::size_t words = 0;
  try {
    words = word_count(d, max_order);
  } catch (const Error&) {
    throw ParseError("max_order too large");
  }
  MarkovFamily mk(alphabet, p, m, tags, max_order);
  SeriesFamily& family = mk.series();
  const std::size_t len = family.out_dim();
  std::vector<char> seen(words * family.size(), 0);

  for (const auto& e : entries) {
    const Json& idx = field(e, "index");
    const Json& kind = field(idx, "kind");
    std::optional<SeriesIndex> j;
    if (kind == "input") {
      const Json& q0 = field(idx, "q0");
      if (!q0.is_string()) throw ParseError("'q0' must be a mode name");
      auto mode = alphabet.find(q0.get<std::string>());
      if (!mode) throw ParseError("unknown mode '" + q0.get<std::string>() + "'");
      const int ch = integer(field(idx, "j"), "j", 1);
      if (ch > m) throw ParseError("input channel out of range");
      j = SeriesIndex::input(*mode, ch - 1);
    } else if (kind == "state") {
      j = SeriesIndex::tag(field(idx, "f").get<std::string>());
    } else {
      throw ParseError("index kind must be 'input' or 'state'");
    }

    const Json& word = field(e, "word");
    if (!word.is_array()) throw ParseError("'word' must be an array of mode names");
    Word w;
    for (const auto& s : word) {
      if (!s.is_string()) throw ParseError("'word' must be an array of mode names");
      auto letter = alphabet.find(s.get<std::string>());
      if (!letter) throw ParseError("unknown mode '" + s.get<std::string>() + "' in word");
      w.push_back(*letter);
    }
    if (static_cast<int>(w.size()) > max_order) throw ParseError("word longer than max_order");

    const Json& value = field(e, "value");
    if (!value.is_array() || value.size() != len)
      throw ParseError("'value' must have p*D = " + std::to_string(len) + " entries");

    const std::size_t col = family.column(*j);
    const std::size_t id = word_id(w, d);
    char& flag = seen[id * family.size() + col];
    if (flag) throw ParseError("duplicate entry " + j->to_string(alphabet) + " " + w.to_string(alphabet));
    flag = 1;
    auto out = family.value(col, id);
    for (std::size_t i = 0; i < len; ++i) out[i] = number(value[i], "value");
  }

  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) {
      const auto& j = family.index_set()[k % family.size()];
      throw ParseError("incomplete data: missing entry " + j.to_string(alphabet) + " " +
                       word_from_id(k / family.size(), d).to_string(alphabet));
    }
  return mk;
}

Json markov_to_json(const MarkovFamily& mk) {
  const Alphabet& alphabet = mk.alphabet();
  const SeriesFamily& family = mk.series();
  Json doc;
  doc["modes"] = alphabet.names();
  doc["p"] = mk.p();
  doc["m"] = mk.m();
  doc["max_order"] = mk.max_order();
  Json entries = Json::array();
  for (std::size_t id = 0; id < family.word_count(); ++id) {
    const Word w = word_from_id(id, alphabet.size());
    Json word = Json::array();
    for (int letter : w) word.push_back(alphabet.name(letter));
    for (std::size_t c = 0; c < family.size(); ++c) {
      const auto& j = family.index_set()[c];
      Json idx;
      if (j.is_input()) {
        idx = {{"kind", "input"}, {"q0", alphabet.name(j.as_input().mode)},
               {"j", j.as_input().channel + 1}};
      } else {
        idx = {{"kind", "state"}, {"f", j.as_tag()}};
      }
      const auto v = family.value(c, id);
      entries.push_back({{"index", std::move(idx)},
                         {"word", word},
                         {"value", vector_to_json(v.data(), static_cast<Eigen::Index>(v.size()))}});
    }
  }
  doc["entries"] = std::move(entries);
  return doc;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ParseError("write to '" + path + "' failed");
}

FileKind detect_kind(const Json& doc) {
  if (doc.is_object() && doc.contains("systems")) return FileKind::System;
  if (doc.is_object() && doc.contains("entries")) return FileKind::Markov;
  throw ParseError("document is neither a system file nor a Markov file");
}

}  // namespace lsreal::io
