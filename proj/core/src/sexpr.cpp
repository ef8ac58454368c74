#include "dnk/sexpr.hpp"

#include <fstream>
#include <sstream>

namespace dnk {

const SNode& SNode::at(size_t i) const {
  if (!is_list || i >= kids.size())
    throw std::out_of_range("sexpr: index " + std::to_string(i) + " out of range");
  return kids[i];
}

const SNode* SNode::find(const std::string& key) const {
  if (!is_list) return nullptr;
  for (auto& k : kids)
    if (k.is_list && !k.kids.empty() && k.kids[0].is_atom() && k.kids[0].tok == key)
      return &k;
  return nullptr;
}

const SNode& SNode::field(const std::string& key) const {
  const SNode* f = find(key);
  if (!f) throw std::out_of_range("sexpr: missing field " + key);
  return *f;
}

std::string SNode::str(const std::string& key) const {
  return field(key).at(1).tok;
}

std::string SNode::str_or(const std::string& key, const std::string& dflt) const {
  const SNode* f = find(key);
  return f ? f->at(1).tok : dflt;
}

long SNode::num_field(const std::string& key, long dflt) const {
  const SNode* f = find(key);
  return f ? std::stol(f->at(1).tok) : dflt;
}

namespace {

struct Reader {
  const std::string& s;
  size_t p = 0;

  void ws() {
    for (;;) {
      while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
      if (p < s.size() && s[p] == ';') {  // comment to end of line
        while (p < s.size() && s[p] != '\n') ++p;
        continue;
      }
      break;
    }
  }

  bool done() {
    ws();
    return p >= s.size();
  }

  SNode node() {
    ws();
    if (p >= s.size()) throw ParseError("sexpr: unexpected end of input", p);
    if (s[p] == '(') {
      ++p;
      SNode n;
      n.is_list = true;
      for (;;) {
        ws();
        if (p >= s.size()) throw ParseError("sexpr: unterminated list", p);
        if (s[p] == ')') { ++p; return n; }
        n.kids.push_back(node());
      }
    }
    if (s[p] == ')') throw ParseError("sexpr: unexpected ')'", p);
    SNode n;
    if (s[p] == '"') {
      ++p;
      std::string out;
      while (p < s.size() && s[p] != '"') {
        if (s[p] == '\\' && p + 1 < s.size()) ++p;
        out += s[p++];
      }
      if (p >= s.size()) throw ParseError("sexpr: unterminated string", p);
      ++p;
      n.tok = std::move(out);
      return n;
    }
    size_t start = p;
    while (p < s.size() && !std::isspace(static_cast<unsigned char>(s[p])) &&
           s[p] != '(' && s[p] != ')' && s[p] != ';')
      ++p;
    n.tok = s.substr(start, p - start);
    return n;
  }
};

bool needs_quotes(const std::string& t) {
  if (t.empty()) return true;
  for (char c : t)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
        c == '"' || c == ';')
      return true;
  return false;
}

void print_rec(const SNode& n, std::string& out) {
  if (n.is_atom()) {
    if (needs_quotes(n.tok)) {
      out += '"';
      for (char c : n.tok) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
    } else {
      out += n.tok;
    }
    return;
  }
  out += '(';
  for (size_t i = 0; i < n.kids.size(); ++i) {
    if (i) out += ' ';
    print_rec(n.kids[i], out);
  }
  out += ')';
}

} // namespace

SNode sexpr_parse(const std::string& text) {
  Reader r{text};
  SNode n = r.node();
  if (!r.done()) throw ParseError("sexpr: trailing input", r.p);
  return n;
}

std::vector<SNode> sexpr_parse_all(const std::string& text) {
  Reader r{text};
  std::vector<SNode> out;
  while (!r.done()) out.push_back(r.node());
  return out;
}

std::vector<SNode> sexpr_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return sexpr_parse_all(ss.str());
}

std::string sexpr_print(const SNode& n) {
  std::string out;
  print_rec(n, out);
  return out;
}

} // namespace dnk
