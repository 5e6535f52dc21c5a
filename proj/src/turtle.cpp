#include "concomp/turtle.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "concomp/errors.hpp"

namespace concomp {

namespace {

bool has_scheme(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (size_t i = 1; i < iri.size(); ++i) {
    char c = iri[i];
    if (c == ':') return true;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

std::string remove_dot_segments(std::string path) {
  std::string out;
  while (!path.empty()) {
    if (path.rfind("../", 0) == 0) {
      path.erase(0, 3);
    } else if (path.rfind("./", 0) == 0) {
      path.erase(0, 2);
    } else if (path.rfind("/./", 0) == 0) {
      path.erase(0, 2);  // keep leading '/'
    } else if (path == "/.") {
      path = "/";
    } else if (path.rfind("/../", 0) == 0 || path == "/..") {
      path = (path == "/..") ? "/" : path.substr(3);
      auto slash = out.find_last_of('/');
      out.erase(slash == std::string::npos ? 0 : slash);
    } else if (path == "." || path == "..") {
      path.clear();
    } else {
      size_t next = path.find('/', 1);
      out += path.substr(0, next);
      path.erase(0, next == std::string::npos ? path.size() : next);
    }
  }
  return out;
}

// RFC 3986 reference resolution, trimmed to what ontology documents use.
std::string resolve_iri(const std::string& ref, const std::string& base) {
  if (ref.empty()) return base;
  if (has_scheme(ref)) return ref;

  std::string scheme, authority, path, base_rest = base;
  auto colon = base.find(':');
  if (colon != std::string::npos && has_scheme(base)) {
    scheme = base.substr(0, colon + 1);
    base_rest = base.substr(colon + 1);
  }
  if (base_rest.rfind("//", 0) == 0) {
    auto end = base_rest.find_first_of("/?#", 2);
    authority = base_rest.substr(0, end == std::string::npos ? base_rest.size() : end);
    path = end == std::string::npos ? "" : base_rest.substr(end);
  } else {
    path = base_rest;
  }
  // strip query/fragment off the base path
  auto cut = path.find_first_of("?#");
  if (cut != std::string::npos) path.erase(cut);

  if (ref[0] == '#') {
    return scheme + authority + path + ref;
  }
  if (ref.rfind("//", 0) == 0) {
    return scheme + ref;
  }
  if (ref[0] == '/') {
    return scheme + authority + remove_dot_segments(ref);
  }
  auto slash = path.find_last_of('/');
  std::string merged = (slash == std::string::npos) ? ref : path.substr(0, slash + 1) + ref;
  return scheme + authority + remove_dot_segments(merged);
}

bool name_start(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool name_char(char c) { return name_start(c) || c == '-'; }

std::string encode_utf8(unsigned code) {
  std::string r;
  if (code < 0x80) {
    r += static_cast<char>(code);
  } else if (code < 0x800) {
    r += static_cast<char>(0xc0 | (code >> 6));
    r += static_cast<char>(0x80 | (code & 0x3f));
  } else if (code < 0x10000) {
    r += static_cast<char>(0xe0 | (code >> 12));
    r += static_cast<char>(0x80 | ((code >> 6) & 0x3f));
    r += static_cast<char>(0x80 | (code & 0x3f));
  } else {
    r += static_cast<char>(0xf0 | (code >> 18));
    r += static_cast<char>(0x80 | ((code >> 12) & 0x3f));
    r += static_cast<char>(0x80 | ((code >> 6) & 0x3f));
    r += static_cast<char>(0x80 | (code & 0x3f));
  }
  return r;
}

class Reader {
 public:
  Reader(std::string_view text, std::string base) : in_(text), base_(std::move(base)) {}

  std::vector<Triple> run() {
    while (true) {
      skip_ws();
      if (eof()) break;
      if (peek() == '@') {
        parse_at_directive();
        continue;
      }
      if (peek_keyword("PREFIX")) {
        pos_ += 6;
        parse_prefix_body(false);
        continue;
      }
      if (peek_keyword("BASE")) {
        pos_ += 4;
        parse_base_body(false);
        continue;
      }
      Term subject = parse_subject();
      parse_predicate_object_list(subject);
      expect('.');
    }
    return std::move(out_);
  }

 private:
  std::string_view in_;
  size_t pos_ = 0;
  int line_ = 1;
  std::string base_;
  std::map<std::string, std::string> prefixes_;
  std::vector<Triple> out_;
  int next_blank_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  bool eof() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }
  char peek_at(size_t off) const { return pos_ + off < in_.size() ? in_[pos_ + off] : '\0'; }
  char get() {
    char c = in_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (eof() || peek() != c) fail(std::string("'") + c + "' expected");
    get();
  }

  // Case-insensitive keyword at the cursor followed by whitespace/'<'.
  bool peek_keyword(std::string_view kw) const {
    if (pos_ + kw.size() > in_.size()) return false;
    for (size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(in_[pos_ + i])) != kw[i]) return false;
    }
    char next = pos_ + kw.size() < in_.size() ? in_[pos_ + kw.size()] : ' ';
    return next == ' ' || next == '\t' || next == '\r' || next == '\n' || next == '<';
  }

  void parse_at_directive() {
    get();  // '@'
    std::string name;
    while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) name += get();
    if (name == "prefix") {
      parse_prefix_body(true);
    } else if (name == "base") {
      parse_base_body(true);
    } else {
      fail("unknown directive @" + name);
    }
  }

  void parse_prefix_body(bool with_dot) {
    skip_ws();
    std::string prefix;
    while (!eof() && peek() != ':') {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') fail("':' expected in prefix declaration");
      prefix += get();
    }
    expect(':');
    skip_ws();
    std::string iri = parse_iriref();
    prefixes_[prefix] = iri;
    if (with_dot) expect('.');
  }

  void parse_base_body(bool with_dot) {
    skip_ws();
    base_ = parse_iriref();
    if (with_dot) expect('.');
  }

  std::string parse_iriref() {
    if (eof() || peek() != '<') fail("IRI expected");
    get();
    std::string value;
    while (true) {
      if (eof()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\\') {
        char e = eof() ? '\0' : get();
        if (e == 'u')
          value += encode_utf8(hex_code(4));
        else if (e == 'U')
          value += encode_utf8(hex_code(8));
        else
          fail("invalid escape in IRI");
      } else if (c == '\n') {
        fail("newline in IRI");
      } else {
        value += c;
      }
    }
    return resolve_iri(value, base_);
  }

  unsigned hex_code(int len) {
    unsigned r = 0;
    for (int i = 0; i < len; ++i) {
      if (eof()) fail("truncated unicode escape");
      char c = get();
      r <<= 4;
      if (c >= '0' && c <= '9')
        r |= c - '0';
      else if (c >= 'a' && c <= 'f')
        r |= c - 'a' + 10;
      else if (c >= 'A' && c <= 'F')
        r |= c - 'A' + 10;
      else
        fail("invalid unicode escape");
    }
    return r;
  }

  // PN_LOCAL: letters, digits, '_', '-', '%XX', '\'-escapes, ':' and interior '.'.
  std::string parse_local_name() {
    std::string local;
    while (!eof()) {
      char c = peek();
      if (name_char(c) || c == ':' || c == '%') {
        local += get();
      } else if (c == '\\') {
        get();
        if (eof()) fail("truncated escape in local name");
        local += get();
      } else if (c == '.') {
        // '.' belongs to the name only when followed by another name char
        char after = peek_at(1);
        if (name_char(after) || after == ':' || after == '%' || after == '.') {
          local += get();
        } else {
          break;
        }
      } else {
        break;
      }
    }
    return local;
  }

  Term parse_prefixed_name(std::string prefix) {
    expect(':');
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("unknown prefix '" + prefix + "'");
    return Term::iri(it->second + parse_local_name());
  }

  std::string fresh_blank() { return "b" + std::to_string(next_blank_++); }

  Term parse_blank_node_label() {
    // "_:" already detected; consume it
    get();
    get();
    std::string label;
    if (eof() || !name_start(peek())) fail("blank node label expected");
    while (!eof() && (name_char(peek()) || peek() == '.')) {
      if (peek() == '.' && !(name_char(peek_at(1)) || peek_at(1) == '.')) break;
      label += get();
    }
    return Term::blank(label);
  }

  Term parse_anon_or_property_list() {
    get();  // '['
    Term node = Term::blank(fresh_blank());
    skip_ws();
    if (!eof() && peek() == ']') {
      get();
      return node;
    }
    parse_predicate_object_list(node);
    expect(']');
    return node;
  }

  Term parse_collection() {
    get();  // '('
    std::vector<Term> items;
    while (true) {
      skip_ws();
      if (eof()) fail("unterminated collection");
      if (peek() == ')') {
        get();
        break;
      }
      items.push_back(parse_object_term());
    }
    if (items.empty()) return Term::iri(vocab::rdf_nil);
    std::vector<Term> nodes;
    nodes.reserve(items.size());
    for (size_t i = 0; i < items.size(); ++i) nodes.push_back(Term::blank(fresh_blank()));
    for (size_t i = 0; i < items.size(); ++i) {
      emit(nodes[i], Term::iri(vocab::rdf_first), items[i]);
      emit(nodes[i], Term::iri(vocab::rdf_rest),
           i + 1 < items.size() ? nodes[i + 1] : Term::iri(vocab::rdf_nil));
    }
    return nodes.front();
  }

  Term parse_literal() {
    char quote = get();  // '"' or '\''
    bool long_string = false;
    if (!eof() && peek() == quote) {
      get();
      if (!eof() && peek() == quote) {
        get();
        long_string = true;
      } else {
        return finish_literal("");  // empty short string
      }
    }
    std::string lex;
    while (true) {
      if (eof()) fail("unterminated string");
      char c = get();
      if (c == quote) {
        if (!long_string) break;
        if (peek() == quote && peek_at(1) == quote) {
          get();
          get();
          break;
        }
        lex += c;
        continue;
      }
      if (c == '\\') {
        if (eof()) fail("truncated escape");
        char e = get();
        switch (e) {
          case 't': lex += '\t'; break;
          case 'n': lex += '\n'; break;
          case 'r': lex += '\r'; break;
          case 'b': lex += '\b'; break;
          case 'f': lex += '\f'; break;
          case '"': lex += '"'; break;
          case '\'': lex += '\''; break;
          case '\\': lex += '\\'; break;
          case 'u': lex += encode_utf8(hex_code(4)); break;
          case 'U': lex += encode_utf8(hex_code(8)); break;
          default: fail("invalid string escape");
        }
        continue;
      }
      if ((c == '\n' || c == '\r') && !long_string) fail("newline in string");
      lex += c;
    }
    return finish_literal(lex);
  }

  Term finish_literal(std::string lex) {
    if (!eof() && peek() == '@') {
      get();
      std::string tag;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) tag += get();
      if (tag.empty()) fail("language tag expected");
      return Term::literal(std::move(lex), "", tag);
    }
    if (!eof() && peek() == '^') {
      get();
      if (eof() || get() != '^') fail("'^^' expected");
      skip_ws();
      Term dt = parse_iri_term();
      std::string dtype = dt.value == vocab::xsd_string ? "" : dt.value;
      return Term::literal(std::move(lex), dtype);
    }
    return Term::literal(std::move(lex));
  }

  Term parse_iri_term() {
    if (peek() == '<') return Term::iri(parse_iriref());
    std::string prefix;
    while (!eof() && peek() != ':') {
      if (!name_char(peek()) && peek() != '.') fail("IRI or prefixed name expected");
      prefix += get();
    }
    return parse_prefixed_name(prefix);
  }

  Term parse_number() {
    std::string tok;
    bool decimal = false, exponent = false;
    if (peek() == '+' || peek() == '-') tok += get();
    while (!eof()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        tok += get();
      } else if (c == '.' && !decimal && !exponent &&
                 std::isdigit(static_cast<unsigned char>(peek_at(1)))) {
        decimal = true;
        tok += get();
      } else if ((c == 'e' || c == 'E') && !exponent) {
        exponent = true;
        tok += get();
        if (!eof() && (peek() == '+' || peek() == '-')) tok += get();
      } else {
        break;
      }
    }
    if (tok.empty() || tok == "+" || tok == "-") fail("invalid number");
    const std::string& dt =
        exponent ? vocab::xsd_double : (decimal ? vocab::xsd_decimal : vocab::xsd_integer);
    return Term::literal(tok, dt);
  }

  Term parse_subject() {
    skip_ws();
    if (eof()) fail("subject expected");
    char c = peek();
    if (c == '<') return Term::iri(parse_iriref());
    if (c == '_' && peek_at(1) == ':') return parse_blank_node_label();
    if (c == '[') return parse_anon_or_property_list();
    if (c == '(') return parse_collection();
    if (name_start(c) || c == ':') {
      std::string prefix = read_prefix_part();
      return parse_prefixed_name(prefix);
    }
    fail("invalid subject");
  }

  std::string read_prefix_part() {
    std::string prefix;
    while (!eof() && peek() != ':') {
      if (!name_char(peek()) && peek() != '.') break;
      prefix += get();
    }
    return prefix;
  }

  Term parse_predicate() {
    skip_ws();
    if (eof()) fail("predicate expected");
    char c = peek();
    if (c == '<') return Term::iri(parse_iriref());
    if (c == 'a') {
      char after = peek_at(1);
      if (after == ' ' || after == '\t' || after == '\n' || after == '\r' || after == '<' ||
          after == '[' || after == '"' || after == '\'') {
        get();
        return Term::iri(vocab::rdf_type);
      }
    }
    if (name_start(c) || c == ':') {
      std::string prefix = read_prefix_part();
      return parse_prefixed_name(prefix);
    }
    fail("invalid predicate");
  }

  Term parse_object_term() {
    skip_ws();
    if (eof()) fail("object expected");
    char c = peek();
    if (c == '<') return Term::iri(parse_iriref());
    if (c == '_' && peek_at(1) == ':') return parse_blank_node_label();
    if (c == '[') return parse_anon_or_property_list();
    if (c == '(') return parse_collection();
    if (c == '"' || c == '\'') return parse_literal();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek_at(1))))) {
      return parse_number();
    }
    if (peek_word("true")) return Term::literal("true", vocab::xsd_boolean);
    if (peek_word("false")) return Term::literal("false", vocab::xsd_boolean);
    if (name_start(c) || c == ':') {
      std::string prefix = read_prefix_part();
      return parse_prefixed_name(prefix);
    }
    fail("invalid object");
  }

  bool peek_word(std::string_view word) {
    if (in_.compare(pos_, word.size(), word) != 0) return false;
    char after = peek_at(word.size());
    if (name_char(after) || after == ':') return false;
    pos_ += word.size();
    return true;
  }

  void parse_predicate_object_list(const Term& subject) {
    while (true) {
      Term predicate = parse_predicate();
      while (true) {
        Term object = parse_object_term();
        emit(subject, predicate, object);
        skip_ws();
        if (!eof() && peek() == ',') {
          get();
          continue;
        }
        break;
      }
      skip_ws();
      if (!eof() && peek() == ';') {
        get();
        skip_ws();
        // trailing semicolons before '.' / ']' are legal
        if (!eof() && (peek() == '.' || peek() == ']' || peek() == ';')) {
          while (!eof() && peek() == ';') {
            get();
            skip_ws();
          }
          if (!eof() && (peek() == '.' || peek() == ']')) return;
        }
        continue;
      }
      return;
    }
  }

  void emit(const Term& s, const Term& p, const Term& o) {
    if (p.kind != TermKind::Iri) fail("predicate must be an IRI");
    out_.push_back(Triple{s, p, o});
  }
};

void write_term(std::ostream& os, const Term& t) {
  switch (t.kind) {
    case TermKind::Iri:
      os << '<' << t.value << '>';
      break;
    case TermKind::Blank:
      os << "_:" << t.value;
      break;
    case TermKind::Literal: {
      os << '"';
      for (char c : t.value) {
        switch (c) {
          case '\\': os << "\\\\"; break;
          case '"': os << "\\\""; break;
          case '\n': os << "\\n"; break;
          case '\r': os << "\\r"; break;
          case '\t': os << "\\t"; break;
          default: os << c;
        }
      }
      os << '"';
      if (!t.lang.empty())
        os << '@' << t.lang;
      else if (!t.datatype.empty())
        os << "^^<" << t.datatype << '>';
      break;
    }
  }
}

std::string prefixed(const std::string& iri) {
  for (const auto& [ns, px] : {std::pair{vocab::rdf_ns, "rdf"}, {vocab::rdfs_ns, "rdfs"},
                               {vocab::owl_ns, "owl"}, {vocab::xsd_ns, "xsd"}}) {
    if (iri.rfind(ns, 0) == 0) {
      std::string local = iri.substr(ns.size());
      bool plain = !local.empty();
      for (char c : local)
        if (!name_char(c) && c != '.') plain = false;
      if (plain) return std::string(px) + ":" + local;
    }
  }
  return "<" + iri + ">";
}

}  // namespace

std::vector<Triple> parse_rdf(std::string_view text, const std::string& base_iri) {
  return Reader(text, base_iri).run();
}

std::string to_ntriples(const std::vector<Triple>& triples) {
  std::ostringstream os;
  for (const auto& t : triples) {
    write_term(os, t.subject);
    os << ' ';
    write_term(os, t.predicate);
    os << ' ';
    write_term(os, t.object);
    os << " .\n";
  }
  return os.str();
}

std::string to_turtle(const std::vector<Triple>& triples) {
  std::ostringstream os;
  os << "@prefix rdf: <" << vocab::rdf_ns << "> .\n";
  os << "@prefix rdfs: <" << vocab::rdfs_ns << "> .\n";
  os << "@prefix owl: <" << vocab::owl_ns << "> .\n";
  os << "@prefix xsd: <" << vocab::xsd_ns << "> .\n\n";
  auto write = [&os](const Term& t) {
    if (t.kind == TermKind::Iri)
      os << prefixed(t.value);
    else
      write_term(os, t);
  };
  for (const auto& t : triples) {
    write(t.subject);
    os << ' ';
    if (t.predicate.value == vocab::rdf_type)
      os << 'a';
    else
      write(t.predicate);
    os << ' ';
    write(t.object);
    os << " .\n";
  }
  return os.str();
}

}  // namespace concomp
