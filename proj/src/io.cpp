#include "credal/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace credal::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(path + ": " + message);
}

double number_at(const json& node, const std::string& path) {
  if (!node.is_number()) fail(path, "expected a number");
  return node.get<double>();
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

LoadResult load_profile(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("$", "expected a JSON object");
  if (!doc.contains("agenda") || !doc["agenda"].is_object()) {
    fail("agenda", "missing or not an object");
  }
  const json& ag = doc["agenda"];
  if (!ag.contains("propositions") || !ag["propositions"].is_array() ||
      ag["propositions"].empty()) {
    fail("agenda.propositions", "missing, not an array, or empty");
  }

  std::vector<std::vector<int>> rows;
  std::vector<std::string> names;
  std::size_t width = 0;
  for (std::size_t i = 0; i < ag["propositions"].size(); ++i) {
    const std::string path = "agenda.propositions[" + std::to_string(i) + "]";
    const json& prop = ag["propositions"][i];
    if (!prop.is_object()) fail(path, "expected an object");
    if (!prop.contains("name") || !prop["name"].is_string()) {
      fail(path + ".name", "missing or not a string");
    }
    if (!prop.contains("truth") || !prop["truth"].is_array() ||
        prop["truth"].empty()) {
      fail(path + ".truth", "missing, not an array, or empty");
    }
    std::vector<int> row;
    for (std::size_t t = 0; t < prop["truth"].size(); ++t) {
      const json& cell = prop["truth"][t];
      if (!cell.is_number_integer() ||
          (cell.get<int>() != 0 && cell.get<int>() != 1)) {
        fail(path + ".truth[" + std::to_string(t) + "]", "expected 0 or 1");
      }
      row.push_back(cell.get<int>());
    }
    if (i == 0) width = row.size();
    if (row.size() != width) fail(path + ".truth", "rows have unequal lengths");
    names.push_back(prop["name"].get<std::string>());
    rows.push_back(std::move(row));
  }
  const Agenda agenda = Agenda::from_truth_table(rows, names);

  if (!doc.contains("agents") || !doc["agents"].is_array() ||
      doc["agents"].empty()) {
    fail("agents", "missing, not an array, or empty");
  }
  std::vector<Agent> agents;
  std::vector<double> weights;
  for (std::size_t k = 0; k < doc["agents"].size(); ++k) {
    const std::string path = "agents[" + std::to_string(k) + "]";
    const json& a = doc["agents"][k];
    if (!a.is_object()) fail(path, "expected an object");
    if (!a.contains("name") || !a["name"].is_string()) {
      fail(path + ".name", "missing or not a string");
    }
    if (!a.contains("credences") || !a["credences"].is_array()) {
      fail(path + ".credences", "missing or not an array");
    }
    std::vector<double> values;
    for (std::size_t j = 0; j < a["credences"].size(); ++j) {
      const std::string vp = path + ".credences[" + std::to_string(j) + "]";
      const double v = number_at(a["credences"][j], vp);
      if (std::isnan(v) || v < 0.0 || v > 1.0) {
        fail(vp, "value " + format_double(v) +
                     " outside [0,1] (percentages are not accepted; use "
                     "fractions)");
      }
      values.push_back(v);
    }
    if (values.size() != agenda.proposition_count()) {
      fail(path + ".credences",
           "expected " + std::to_string(agenda.proposition_count()) +
               " values, got " + std::to_string(values.size()));
    }
    const double weight =
        a.contains("weight") ? number_at(a["weight"], path + ".weight") : 1.0;
    if (std::isnan(weight) || weight < 0.0) {
      fail(path + ".weight", "must be nonnegative");
    }
    agents.push_back({a["name"].get<std::string>(), Credence(values)});
    weights.push_back(weight);
  }

  double total = 0.0;
  for (double wgt : weights) total += wgt;
  if (total <= 0.0) fail("agents", "weights must have positive sum");
  LoadResult result{
      Profile(agenda, std::move(agents), WeightVector::normalized(weights)),
      std::fabs(total - 1.0) > 1e-9};
  return result;
}

LoadResult load_profile_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_profile(buf.str());
}

std::string emit_profile_json(const Profile& profile) {
  const Agenda& agenda = profile.agenda();
  std::string out = "{\n  \"agenda\": {\"propositions\": [\n";
  for (std::size_t i = 0; i < agenda.proposition_count(); ++i) {
    out += "    {\"name\": \"" + escape(agenda.propositions()[i]) +
           "\", \"truth\": [";
    for (std::size_t t = 0; t < agenda.world_count(); ++t) {
      if (t) out += ", ";
      out += std::to_string(agenda.truth(i, t));
    }
    out += "]}";
    out += i + 1 < agenda.proposition_count() ? ",\n" : "\n";
  }
  out += "  ]},\n  \"agents\": [\n";
  for (std::size_t k = 0; k < profile.agent_count(); ++k) {
    const Agent& a = profile.agents()[k];
    out += "    {\"name\": \"" + escape(a.name) + "\", \"credences\": [";
    for (std::size_t j = 0; j < a.credence.size(); ++j) {
      if (j) out += ", ";
      out += format_double(a.credence[j]);
    }
    out += "], \"weight\": " + format_double(profile.weight(k)) + "}";
    out += k + 1 < profile.agent_count() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string emit_profile_csv(const Profile& profile) {
  const Agenda& agenda = profile.agenda();
  std::string out = "agent,weight";
  for (const std::string& name : agenda.propositions()) out += "," + name;
  out += "\n";
  for (std::size_t k = 0; k < profile.agent_count(); ++k) {
    const Agent& a = profile.agents()[k];
    out += a.name + "," + format_double(profile.weight(k));
    for (std::size_t j = 0; j < a.credence.size(); ++j) {
      out += "," + format_double(a.credence[j]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace credal::io
