#include "kmrep/chain_spec.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kmrep {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::vector<double> number_array(const json& obj, const char* field) {
  if (!obj.contains(field)) fail(std::string("chain spec: custom_tridiagonal.") + field + " is missing");
  const json& arr = obj.at(field);
  if (!arr.is_array()) fail(std::string("chain spec: custom_tridiagonal.") + field + " must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (size_t k = 0; k < arr.size(); ++k) {
    if (!arr[k].is_number())
      fail(std::string("chain spec: custom_tridiagonal.") + field + "[" + std::to_string(k) +
           "] must be a number");
    out.push_back(arr[k].get<double>());
  }
  return out;
}

}  // namespace

TridiagonalChain CustomTridiagonal::to_chain() const {
  try {
    return TridiagonalChain::from_vectors(p, q, r);
  } catch (const std::invalid_argument& e) {
    fail(std::string("chain spec: custom_tridiagonal invalid: ") + e.what());
  }
}

ChainSpec parse_chain_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("chain spec: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("chain spec: top level must be an object");

  const bool has_family = doc.contains("family");
  const bool has_custom = doc.contains("custom_tridiagonal");
  if (has_family == has_custom)
    fail("chain spec: provide exactly one of 'family' or 'custom_tridiagonal'");

  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "family" && key != "params" && key != "custom_tridiagonal")
      fail("chain spec: unknown field '" + key + "'");
  }

  if (has_custom) {
    const json& obj = doc.at("custom_tridiagonal");
    if (!obj.is_object()) fail("chain spec: custom_tridiagonal must be an object");
    for (const auto& [key, value] : obj.items()) {
      (void)value;
      if (key != "p" && key != "q" && key != "r")
        fail("chain spec: custom_tridiagonal has unknown field '" + key + "'");
    }
    CustomTridiagonal custom;
    custom.p = number_array(obj, "p");
    custom.q = number_array(obj, "q");
    custom.r = number_array(obj, "r");
    custom.to_chain();  // surface validation errors at parse time
    return custom;
  }

  if (!doc.at("family").is_string()) fail("chain spec: 'family' must be a string");
  FamilySpec spec;
  spec.name = doc.at("family").get<std::string>();
  if (doc.contains("params")) {
    const json& params = doc.at("params");
    if (!params.is_object()) fail("chain spec: 'params' must be an object");
    for (const auto& [key, value] : params.items()) {
      if (!value.is_number())
        fail("chain spec: params." + key + " must be a number");
      spec.params[key] = value.get<double>();
    }
  }
  make_family(spec);  // validates name and parameter set
  return spec;
}

ChainSpec load_chain_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("chain spec: cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_chain_spec(buffer.str());
}

Family make_family(const FamilySpec& spec) { return make_family(spec.name, spec.params); }

}  // namespace kmrep
