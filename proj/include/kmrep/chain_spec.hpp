#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "kmrep/chain.hpp"
#include "kmrep/families.hpp"

namespace kmrep {

/// Parsed form of the chain-spec file:
///   {"family": "<name>", "params": {...}}
/// or
///   {"custom_tridiagonal": {"p": [...], "q": [...], "r": [...]}}
/// where p, q, r have one entry per state (q[0] = 0 and p[last] = 0).
struct FamilySpec {
  std::string name;
  std::map<std::string, double> params;
};

struct CustomTridiagonal {
  std::vector<double> p;
  std::vector<double> q;
  std::vector<double> r;

  TridiagonalChain to_chain() const;
};

using ChainSpec = std::variant<FamilySpec, CustomTridiagonal>;

/// Parses a chain-spec document; std::invalid_argument diagnostics carry the
/// offending field (and the parser's byte/line position for malformed JSON).
ChainSpec parse_chain_spec(const std::string& json_text);

ChainSpec load_chain_spec(const std::string& path);

Family make_family(const FamilySpec& spec);

}  // namespace kmrep
