#pragma once

#include <memory>
#include <string>
#include <vector>
#include "dnk/parse.hpp"

namespace dnk {

// Minimal s-expression reader used for data manifests (catalog records,
// ansatz tables, subalgebra lists).  A node is either an atom token or a
// parenthesized list.  Strings in double quotes are atoms with the quotes
// stripped; everything else between whitespace/parens is a raw token.
struct SNode {
  bool is_list = false;
  std::string tok;            // atom payload
  std::vector<SNode> kids;    // list payload

  bool is_atom() const { return !is_list; }
  const SNode& at(size_t i) const;
  // list whose head token is `key` -> that list; throws if absent
  const SNode& field(const std::string& key) const;
  const SNode* find(const std::string& key) const;  // nullptr if absent
  // convenience accessors for (key value) fields
  std::string str(const std::string& key) const;
  std::string str_or(const std::string& key, const std::string& dflt) const;
  long num_field(const std::string& key, long dflt) const;
};

// Parse one s-expression from text (must consume all non-whitespace input).
SNode sexpr_parse(const std::string& text);
// Parse a sequence of top-level s-expressions.
std::vector<SNode> sexpr_parse_all(const std::string& text);
// Read and parse a whole file.
std::vector<SNode> sexpr_load(const std::string& path);

std::string sexpr_print(const SNode& n);

} // namespace dnk
