#include "nmach/machine_io.hpp"

#include <fstream>
#include <sstream>

#include "nmach/error.hpp"

namespace nmach {

using nlohmann::json;

json machine_to_json(const Machine& m) {
  json j;
  j["alphabet"] = m.alphabet();
  bool structured = false;
  for (std::size_t i = 0; i < m.num_states(); ++i) {
    const auto& s = m.states()[i];
    structured = structured || s.group != i || s.copy != 0;
  }
  json states = json::array();
  for (const auto& s : m.states()) {
    if (structured)
      states.push_back({{"name", s.name}, {"group", s.group}, {"copy", s.copy}});
    else
      states.push_back(s.name);
  }
  j["states"] = states;
  json mats = json::object();
  for (std::size_t x = 0; x < m.num_symbols(); ++x) mats[m.alphabet()[x]] = m.matrix(x).to_rows();
  j["matrices"] = mats;
  j["stationary"] = m.stationary();
  return j;
}

Machine machine_from_json(const json& j, double tol) {
  try {
    if (!j.is_object()) throw Error(Errc::ParseError, "machine document must be an object");
    for (const char* key : {"alphabet", "states", "matrices"})
      if (!j.contains(key)) throw Error(Errc::ParseError, std::string("missing field '") + key + "'");

    std::vector<std::string> alphabet;
    for (const auto& s : j.at("alphabet")) {
      if (s.is_string())
        alphabet.push_back(s.get<std::string>());
      else if (s.is_number_integer())
        alphabet.push_back(std::to_string(s.get<long long>()));
      else
        throw Error(Errc::ParseError, "alphabet entries must be strings");
    }

    std::vector<StateLabel> states;
    const auto& js = j.at("states");
    if (!js.is_array()) throw Error(Errc::ParseError, "'states' must be an array");
    for (std::size_t i = 0; i < js.size(); ++i) {
      const auto& s = js[i];
      if (s.is_string())
        states.push_back({s.get<std::string>(), i, 0});
      else if (s.is_object())
        states.push_back({s.at("name").get<std::string>(), s.value("group", i), s.value("copy", std::size_t(0))});
      else
        throw Error(Errc::ParseError, "state entries must be strings or objects");
    }

    const auto& jm = j.at("matrices");
    if (!jm.is_object()) throw Error(Errc::ParseError, "'matrices' must be an object keyed by symbol");
    std::vector<Matrix> mats;
    for (const auto& sym : alphabet) {
      if (!jm.contains(sym)) throw Error(Errc::ParseError, "no matrix for symbol '" + sym + "'");
      mats.push_back(Matrix::from_rows(jm.at(sym).get<std::vector<std::vector<double>>>()));
    }
    if (jm.size() != alphabet.size()) throw Error(Errc::ParseError, "matrix for a symbol outside the alphabet");

    try {
      return Machine::build(alphabet, states, mats, tol);
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateFixedSpace || !j.contains("stationary")) throw;
      Machine m = Machine::unchecked(alphabet, states, mats, j.at("stationary").get<Vector>());
      if (!validate(m, tol).empty()) throw;
      return m;
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

std::string machine_to_string(const Machine& m, int indent) { return machine_to_json(m).dump(indent); }

Machine machine_from_string(const std::string& text, double tol) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return machine_from_json(j, tol);
}

Machine load_machine(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return machine_from_string(ss.str(), tol);
}

void save_machine(const Machine& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidInput, "cannot write '" + path + "'");
  out << machine_to_string(m) << "\n";
}

}  // namespace nmach
