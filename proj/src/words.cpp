#include "proplab/words.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "proplab/util.hpp"

namespace proplab {

Word normalized(std::vector<std::pair<int, int>> syms) {
  Word w;
  for (auto& [g, e] : syms) {
    if (e == 0) continue;
    if (!w.syms.empty() && w.syms.back().first == g) {
      w.syms.back().second += e;
      if (w.syms.back().second == 0) w.syms.pop_back();
    } else {
      w.syms.emplace_back(g, e);
    }
  }
  return w;
}

Word Word::inverse() const {
  std::vector<std::pair<int, int>> out;
  for (auto it = syms.rbegin(); it != syms.rend(); ++it) out.emplace_back(it->first, -it->second);
  return normalized(std::move(out));
}

Word Word::concat(const Word& other) const {
  std::vector<std::pair<int, int>> out = syms;
  out.insert(out.end(), other.syms.begin(), other.syms.end());
  return normalized(std::move(out));
}

Word Word::pow(int e) const {
  if (e == 0) return Word{};
  Word base = e > 0 ? *this : inverse();
  Word out;
  for (int i = 0; i < std::abs(e); ++i) out = out.concat(base);
  return out;
}

Word Word::conjugate_by(const Word& w) const {
  return w.inverse().concat(*this).concat(w);
}

Word Word::commutator(const Word& a, const Word& b) {
  return a.inverse().concat(b.inverse()).concat(a).concat(b);
}

std::vector<int> Word::letters() const {
  std::vector<int> out;
  for (auto [g, e] : syms) {
    int letter = e > 0 ? 2 * g : 2 * g + 1;
    for (int i = 0; i < std::abs(e); ++i) out.push_back(letter);
  }
  return out;
}

std::string Word::text(const std::vector<std::string>& gen_names) const {
  if (syms.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (i) out += "*";
    out += gen_names[static_cast<std::size_t>(syms[i].first)];
    if (syms[i].second != 1) out += "^" + std::to_string(syms[i].second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Tokenizer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      throw SyntaxError(std::string("expected '") + c + "' at position " + std::to_string(pos) +
                        " in '" + text + "'");
    }
  }

  std::string ident() {
    skip_ws();
    if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos]))) {
      throw SyntaxError("expected generator name at position " + std::to_string(pos) + " in '" +
                        text + "'");
    }
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_')) {
      ++pos;
    }
    return text.substr(start, pos - start);
  }

  int integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start])))) {
      throw SyntaxError("expected integer at position " + std::to_string(start) + " in '" + text +
                        "'");
    }
    return static_cast<int>(parse_int(text.substr(start, pos - start)));
  }
};

struct WordParser {
  Tokenizer& tok;
  const std::vector<std::string>& gens;

  int gen_index(const std::string& name) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i] == name) return static_cast<int>(i);
    }
    throw UndeclaredGenerator("'" + name + "'");
  }

  // word := term { [*] term }
  Word word() {
    Word out = term();
    while (true) {
      char c = tok.peek();
      if (c == '*') {
        tok.accept('*');
        out = out.concat(term());
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
        out = out.concat(term());
      } else {
        break;
      }
    }
    return out;
  }

  // term := atom [ ^ exponent ]*, exponent := integer | ( word ) | ( word , word )
  Word term() {
    Word base = atom();
    while (tok.peek() == '^') {
      tok.accept('^');
      if (tok.peek() == '(') {
        tok.expect('(');
        Word by = word();
        if (tok.accept(',')) {
          // a^(u,v) conjugates by the commutator (u,v)
          Word second = word();
          by = Word::commutator(by, second);
        }
        tok.expect(')');
        base = base.conjugate_by(by);
      } else {
        base = base.pow(tok.integer());
      }
    }
    return base;
  }

  // atom := generator | ( word ) | ( word , word )
  Word atom() {
    if (tok.accept('(')) {
      Word first = word();
      if (tok.accept(',')) {
        Word second = word();
        tok.expect(')');
        return Word::commutator(first, second);
      }
      tok.expect(')');
      return first;
    }
    std::string name = tok.ident();
    return normalized({{gen_index(name), 1}});
  }
};

Word parse_relation(const std::vector<std::string>& gens, const std::string& text) {
  // split on a top-level '=' (at most one)
  int depth = 0;
  std::size_t eq = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '=' && depth == 0) {
      if (eq != std::string::npos) throw SyntaxError("multiple '=' in relation '" + text + "'");
      eq = i;
    }
  }
  auto parse_side = [&](const std::string& part) {
    Tokenizer tok{part};
    WordParser wp{tok, gens};
    Word w = wp.word();
    if (!tok.eof()) {
      throw SyntaxError("trailing input at position " + std::to_string(tok.pos) + " in '" + part +
                        "'");
    }
    return w;
  };
  if (eq == std::string::npos) return parse_side(text);
  Word lhs = parse_side(text.substr(0, eq));
  Word rhs = parse_side(text.substr(eq + 1));
  return lhs.concat(rhs.inverse());
}

std::vector<std::string> parse_gen_list(const std::string& text) {
  std::vector<std::string> gens;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) {
      gens.push_back(cur);
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        throw SyntaxError(std::string("bad character '") + c + "' in generator list");
      }
      cur.push_back(c);
    }
  }
  flush();
  if (gens.empty()) throw SyntaxError("empty generator list");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (gens[i] == gens[j]) throw SyntaxError("duplicate generator '" + gens[i] + "'");
    }
  }
  return gens;
}

std::vector<std::string> split_top_level_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  std::string body = strip(text);
  if (body.size() < 2 || body.front() != '<' || body.back() != '>') {
    throw SyntaxError("presentation must be enclosed in <...>");
  }
  body = body.substr(1, body.size() - 2);
  auto bar = body.find('|');
  if (bar == std::string::npos) throw SyntaxError("presentation needs '|'");

  Presentation p;
  p.generators = parse_gen_list(body.substr(0, bar));
  std::string rels = strip(body.substr(bar + 1));
  if (!rels.empty()) {
    for (const auto& part : split_top_level_commas(rels)) {
      std::string src = strip(part);
      if (src.empty()) continue;
      p.relators.push_back(parse_relation(p.generators, src));
      p.relator_sources.push_back(src);
    }
  }
  return p;
}

Presentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open presentation file '" + path + "'");
  Presentation p;
  bool have_gens = false;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    if (!have_gens) {
      if (line.rfind("gens:", 0) != 0) {
        throw SyntaxError("presentation file must start with 'gens: ...'");
      }
      p.generators = parse_gen_list(line.substr(5));
      have_gens = true;
      continue;
    }
    p.relators.push_back(parse_relation(p.generators, line));
    p.relator_sources.push_back(line);
  }
  if (!have_gens) throw SyntaxError("presentation file has no 'gens:' line");
  return p;
}

Word parse_word_in(const Presentation& p, const std::string& text) {
  Tokenizer tok{text};
  WordParser wp{tok, p.generators};
  Word w = wp.word();
  if (!tok.eof()) {
    throw SyntaxError("trailing input at position " + std::to_string(tok.pos) + " in '" + text +
                      "'");
  }
  return w;
}

}  // namespace proplab
