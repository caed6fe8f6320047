#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "superquot/cli.hpp"

namespace sq {

// ----------------------------------------------------------------- model

const HopfSuperalgebra* Model::find_hopf(const std::string& name) const {
  for (size_t i = 0; i < hopf_order_.size(); ++i)
    if (hopf_order_[i] == name) return &hopfs_[i];
  return nullptr;
}

const Model::Sub* Model::find_sub(const std::string& name) const {
  for (auto& s : subs_)
    if (s.name == name) return &s;
  return nullptr;
}

bool Model::antipode_auto(const std::string& hopf) const {
  for (size_t i = 0; i < hopf_order_.size(); ++i)
    if (hopf_order_[i] == hopf) return auto_antipode_[i];
  return false;
}

void Model::add_hopf(HopfSuperalgebra h, bool antipode_auto) {
  if (find_hopf(h.name()) || find_sub(h.name()))
    throw std::invalid_argument("duplicate block name: " + h.name());
  hopf_order_.push_back(h.name());
  hopfs_.push_back(std::move(h));
  auto_antipode_.push_back(antipode_auto);
}

void Model::add_sub(Sub s) {
  if (find_hopf(s.name) || find_sub(s.name))
    throw std::invalid_argument("duplicate block name: " + s.name);
  subs_.push_back(std::move(s));
}

// ----------------------------------------------------------------- lexer

namespace {

enum class Tk { Ident, Int, Sym, Tensor, End };

struct Token {
  Tk k = Tk::End;
  std::string s;
  int line = 0, col = 0;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0, n = text.size();
  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k; ++j) {
      if (text[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += k;
  };
  static const std::string syms = "{}();,=+-*/^";
  while (i < n) {
    char c = text[i];
    if (c == '#') {
      while (i < n && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '(' && i + 2 < n && text[i + 1] == 'x' && text[i + 2] == ')') {
      out.push_back({Tk::Tensor, "(x)", line, col});
      advance(3);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Tk::Ident, text.substr(i, j - i), line, col});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tk::Int, text.substr(i, j - i), line, col});
      advance(j - i);
      continue;
    }
    if (syms.find(c) != std::string::npos) {
      out.push_back({Tk::Sym, std::string(1, c), line, col});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Tk::End, "", line, col});
  return out;
}

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  explicit Parser(const std::string& text) : toks(lex(text)) {}

  const Token& peek() const { return toks[pos]; }
  Token next() {
    Token t = toks[pos];
    if (toks[pos].k != Tk::End) ++pos;
    return t;
  }
  bool at_sym(const char* s) const { return peek().k == Tk::Sym && peek().s == s; }
  bool eat_sym(const char* s) {
    if (!at_sym(s)) return false;
    ++pos;
    return true;
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    throw ParseError(msg, t.line, t.col);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  void expect_sym(const char* s) {
    if (!eat_sym(s)) fail(std::string("expected '") + s + "'");
  }
  Token expect_ident(const char* what) {
    if (peek().k != Tk::Ident) fail(std::string("expected ") + what);
    return next();
  }
  long expect_int(const char* what) {
    if (peek().k != Tk::Int) fail(std::string("expected ") + what);
    return std::stol(next().s);
  }

  // -------- expressions --------
  // expr   := [+|-] term ((+|-) term)*
  // term   := factor (('*' factor) | ('(x)' factor))*   (the tensor separator
  //           advances to the right leg; only allowed when T is given)
  // factor := INT ['/' INT] | IDENT ['^' ['-'] INT] | '(' expr ')'
  SuperElement parse_expr(const SuperPresentation& P, const TensorAlgebra* T) {
    SuperElement acc = P.zero();
    const SuperPresentation& A = T ? T->alg() : P;
    acc = A.zero();
    bool first = true;
    while (true) {
      Scalar sign = Scalar::one(P.field());
      if (eat_sym("-")) {
        sign = -sign;
      } else if (eat_sym("+")) {
        // explicit leading plus
      } else if (!first && !(peek().k == Tk::Ident || peek().k == Tk::Int || at_sym("("))) {
        break;
      }
      acc = A.add(acc, A.scale(parse_term(P, T), sign));
      first = false;
      if (!(at_sym("+") || at_sym("-"))) break;
    }
    return acc;
  }

  SuperElement parse_term(const SuperPresentation& P, const TensorAlgebra* T) {
    Scalar coef = Scalar::one(P.field());
    int nlegs = T ? 2 : 1;
    std::vector<SuperElement> legs(nlegs, P.one());
    int cur = 0;
    parse_factor(P, coef, legs[cur]);
    while (true) {
      if (eat_sym("*")) {
        parse_factor(P, coef, legs[cur]);
      } else if (peek().k == Tk::Tensor) {
        if (!T) fail("tensor separator '(x)' is not allowed here");
        if (cur + 1 >= nlegs) fail("too many tensor factors");
        next();
        ++cur;
        parse_factor(P, coef, legs[cur]);
      } else {
        break;
      }
    }
    if (T) {
      SuperElement e = T->alg().mul(T->inject(0, legs[0]), T->inject(1, legs[1]));
      return T->alg().scale(e, coef);
    }
    return P.scale(legs[0], coef);
  }

  void parse_factor(const SuperPresentation& P, Scalar& coef, SuperElement& leg) {
    const Token t = peek();
    if (t.k == Tk::Int) {
      next();
      long num = std::stol(t.s);
      if (at_sym("/")) {
        next();
        long den = expect_int("denominator");
        if (den == 0) fail_at(t, "zero denominator");
        coef *= Scalar::fraction(P.field(), num, den);
      } else {
        coef *= Scalar(P.field(), num);
      }
      return;
    }
    if (t.k == Tk::Ident) {
      next();
      long power = 1;
      if (at_sym("^")) {
        next();
        long sgn = 1;
        if (eat_sym("-")) sgn = -1;
        power = sgn * expect_int("exponent");
      }
      if (auto ie = P.find_even(t.s)) {
        if (power < 0 && !P.even(*ie).invertible)
          fail_at(t, "generator '" + t.s + "' is not invertible");
        if (power == 0) return;
        leg = P.mul(leg, P.even_gen(*ie, static_cast<int>(power)));
        return;
      }
      if (auto io = P.find_odd(t.s)) {
        if (power != 1) fail_at(t, "odd generator '" + t.s + "' cannot carry an exponent");
        leg = P.mul(leg, P.odd_gen(*io));
        return;
      }
      fail_at(t, "unknown generator '" + t.s + "'");
    }
    if (at_sym("(")) {
      next();
      leg = P.mul(leg, parse_expr(P, nullptr));
      expect_sym(")");
      return;
    }
    fail("expected a factor");
  }
};

// -------- hopf block --------

void parse_hopf_block(Parser& p, Model& m) {
  const Token nameTok = p.expect_ident("hopf name");
  p.expect_sym("{");
  SuperPresentation P(m.field());
  std::optional<TensorAlgebra> T;
  bool frozen = false;
  std::map<std::string, SuperElement> dmap, smap;
  std::map<std::string, Scalar> emap;
  bool have_coproduct = false, have_counit = false, have_antipode = false, anti_auto = false;

  auto freeze = [&] { frozen = true; };

  while (!p.eat_sym("}")) {
    const Token kw = p.expect_ident("a statement keyword");
    if (kw.s == "even" || kw.s == "odd") {
      if (frozen)
        p.fail_at(kw, "generators must be declared before relations/coproduct/counit/antipode");
      while (true) {
        const Token g = p.expect_ident("generator name");
        bool inv = false;
        int weight = 1;
        while (p.peek().k == Tk::Ident && (p.peek().s == "inv" || p.peek().s == "weight")) {
          const Token f = p.next();
          if (f.s == "inv") {
            if (kw.s == "odd") p.fail_at(f, "odd generators cannot be invertible");
            inv = true;
          } else {
            weight = static_cast<int>(p.expect_int("weight value"));
            if (weight < 1) p.fail_at(f, "weight must be positive");
          }
        }
        try {
          if (kw.s == "even")
            P.add_even(g.s, weight, inv);
          else
            P.add_odd(g.s, weight);
        } catch (const std::invalid_argument& e) {
          p.fail_at(g, e.what());
        }
        if (p.eat_sym(",")) continue;
        p.expect_sym(";");
        break;
      }
    } else if (kw.s == "relations") {
      freeze();
      while (true) {
        const Token at = p.peek();
        SuperElement r = p.parse_expr(P, nullptr);
        try {
          P.add_relation(r);
        } catch (const std::invalid_argument& e) {
          p.fail_at(at, e.what());
        }
        if (p.eat_sym(",")) continue;
        p.expect_sym(";");
        break;
      }
    } else if (kw.s == "coproduct") {
      freeze();
      if (have_coproduct) p.fail_at(kw, "duplicate coproduct block");
      have_coproduct = true;
      if (!T) T.emplace(m.field(), std::vector<const SuperPresentation*>{&P, &P},
                        std::vector<std::string>{"l.", "r."});
      p.expect_sym("{");
      while (!p.eat_sym("}")) {
        const Token g = p.expect_ident("generator name");
        p.expect_sym("=");
        SuperElement img = p.parse_expr(P, &*T);
        p.expect_sym(";");
        int par;
        if (auto ie = P.find_even(g.s)) {
          if (P.even(*ie).internal) p.fail_at(g, "unknown generator '" + g.s + "'");
          par = 0;
        } else if (P.find_odd(g.s)) {
          par = 1;
        } else {
          p.fail_at(g, "unknown generator '" + g.s + "'");
        }
        int ip = T->alg().parity_of(img);
        if (!img.is_zero() && ip != par)
          p.fail_at(g, "parity mismatch in the coproduct of '" + g.s + "'");
        if (!dmap.emplace(g.s, img).second) p.fail_at(g, "duplicate coproduct clause for '" + g.s + "'");
      }
    } else if (kw.s == "counit") {
      freeze();
      if (have_counit) p.fail_at(kw, "duplicate counit block");
      have_counit = true;
      p.expect_sym("{");
      while (!p.eat_sym("}")) {
        const Token g = p.expect_ident("generator name");
        p.expect_sym("=");
        const Token at = p.peek();
        SuperElement v = P.normal_form(p.parse_expr(P, nullptr));
        p.expect_sym(";");
        Scalar c = Scalar::zero(m.field());
        if (!v.is_zero()) {
          if (v.terms.size() != 1 || v.terms[0].m.odd != 0 ||
              P.weight_of(v.terms[0].m) != 0)
            p.fail_at(at, "counit value must be a constant");
          c = v.terms[0].c;
        }
        if (P.find_odd(g.s)) {
          if (!c.is_zero()) p.fail_at(g, "the counit of an odd generator must be 0");
          continue;
        }
        auto ie = P.find_even(g.s);
        if (!ie || P.even(*ie).internal) p.fail_at(g, "unknown generator '" + g.s + "'");
        if (!emap.emplace(g.s, c).second) p.fail_at(g, "duplicate counit clause for '" + g.s + "'");
      }
    } else if (kw.s == "antipode") {
      freeze();
      if (have_antipode) p.fail_at(kw, "duplicate antipode clause");
      have_antipode = true;
      if (p.peek().k == Tk::Ident && p.peek().s == "auto") {
        p.next();
        p.expect_sym(";");
        anti_auto = true;
      } else {
        p.expect_sym("{");
        while (!p.eat_sym("}")) {
          const Token g = p.expect_ident("generator name");
          p.expect_sym("=");
          SuperElement img = p.parse_expr(P, nullptr);
          p.expect_sym(";");
          int par;
          if (auto ie = P.find_even(g.s)) {
            if (P.even(*ie).internal) p.fail_at(g, "unknown generator '" + g.s + "'");
            par = 0;
          } else if (P.find_odd(g.s)) {
            par = 1;
          } else {
            p.fail_at(g, "unknown generator '" + g.s + "'");
          }
          int ip = P.parity_of(img);
          if (!img.is_zero() && ip != par)
            p.fail_at(g, "parity mismatch in the antipode of '" + g.s + "'");
          if (!smap.emplace(g.s, img).second)
            p.fail_at(g, "duplicate antipode clause for '" + g.s + "'");
        }
      }
    } else {
      p.fail_at(kw, "unknown statement '" + kw.s + "'");
    }
  }

  // assemble structure maps in declaration order
  if (!have_coproduct && (P.n_even() > 0 || P.n_odd() > 0))
    p.fail_at(nameTok, "hopf block '" + nameTok.s + "' has no coproduct");
  if (!have_antipode) p.fail_at(nameTok, "hopf block '" + nameTok.s + "' has no antipode clause");
  std::vector<SuperElement> dev, dod;
  std::vector<Scalar> eps;
  for (int i = 0; i < P.n_even(); ++i) {
    if (P.even(i).internal) continue;
    auto it = dmap.find(P.even(i).name);
    if (it == dmap.end())
      p.fail_at(nameTok, "missing coproduct for generator '" + P.even(i).name + "'");
    dev.push_back(it->second);
    auto ie = emap.find(P.even(i).name);
    if (ie == emap.end())
      p.fail_at(nameTok, "missing counit for generator '" + P.even(i).name + "'");
    eps.push_back(ie->second);
  }
  for (int i = 0; i < P.n_odd(); ++i) {
    auto it = dmap.find(P.odd(i).name);
    if (it == dmap.end())
      p.fail_at(nameTok, "missing coproduct for generator '" + P.odd(i).name + "'");
    dod.push_back(it->second);
  }

  HopfSuperalgebra H(nameTok.s, P, dev, dod, eps);
  if (anti_auto) {
    if (auto err = H.solve_antipode())
      p.fail_at(nameTok, "antipode auto failed for '" + nameTok.s + "': " + *err);
  } else {
    std::vector<SuperElement> se, so;
    for (int i = 0; i < P.n_even(); ++i) {
      if (P.even(i).internal) continue;
      auto it = smap.find(P.even(i).name);
      if (it == smap.end())
        p.fail_at(nameTok, "missing antipode for generator '" + P.even(i).name + "'");
      se.push_back(it->second);
    }
    for (int i = 0; i < P.n_odd(); ++i) {
      auto it = smap.find(P.odd(i).name);
      if (it == smap.end())
        p.fail_at(nameTok, "missing antipode for generator '" + P.odd(i).name + "'");
      so.push_back(it->second);
    }
    H.set_antipode(se, so);
  }
  try {
    m.add_hopf(std::move(H), anti_auto);
  } catch (const std::invalid_argument& e) {
    p.fail_at(nameTok, e.what());
  }
}

// -------- sub block --------

void parse_sub_block(Parser& p, Model& m) {
  const Token nameTok = p.expect_ident("sub name");
  const Token of = p.expect_ident("'of'");
  if (of.s != "of") p.fail_at(of, "expected 'of'");
  const Token parentTok = p.expect_ident("parent hopf name");
  const HopfSuperalgebra* parent = m.find_hopf(parentTok.s);
  if (!parent) p.fail_at(parentTok, "unknown hopf '" + parentTok.s + "'");
  const SuperPresentation& P = parent->algebra();
  Model::Sub s;
  s.name = nameTok.s;
  s.parent = parentTok.s;
  p.expect_sym("{");
  while (!p.eat_sym("}")) {
    const Token kw = p.expect_ident("'kill'");
    if (kw.s != "kill") p.fail_at(kw, "unknown statement '" + kw.s + "'");
    while (true) {
      SuperElement e = P.normal_form(p.parse_expr(P, nullptr));
      s.kill_src.push_back(P.str(e));
      s.ideal.push_back(std::move(e));
      if (p.eat_sym(",")) continue;
      p.expect_sym(";");
      break;
    }
  }
  try {
    m.add_sub(std::move(s));
  } catch (const std::invalid_argument& e) {
    p.fail_at(nameTok, e.what());
  }
}

}  // namespace

// ----------------------------------------------------------------- entry points

void parse_into(Model& m, const std::string& text) {
  Parser p(text);
  while (p.peek().k != Tk::End) {
    const Token kw = p.expect_ident("'hopf', 'sub', 'bound', or 'field'");
    if (kw.s == "hopf") {
      parse_hopf_block(p, m);
    } else if (kw.s == "sub") {
      parse_sub_block(p, m);
    } else if (kw.s == "bound") {
      int b = static_cast<int>(p.expect_int("bound value"));
      p.expect_sym(";");
      m.set_default_bound(b);
    } else if (kw.s == "field") {
      Field f = Field::rationals();
      const Token ft = p.expect_ident("'q' or 'p'");
      if (ft.s == "p") {
        p.expect_sym("=");
        f = Field::prime(static_cast<unsigned long>(p.expect_int("prime")));
      } else if (ft.s != "q") {
        p.fail_at(ft, "expected 'q' or 'p = PRIME'");
      }
      p.expect_sym(";");
      if (f != m.field())
        p.fail_at(kw, "field setting conflicts with the session field " + m.field().describe());
    } else {
      p.fail_at(kw, "expected 'hopf', 'sub', 'bound', or 'field'");
    }
  }
}

Model parse_presentation(const std::string& text, const Field& f) {
  Model m(f);
  parse_into(m, text);
  return m;
}

SuperElement parse_element(const SuperPresentation& P, const std::string& text) {
  Parser p(text);
  SuperElement e = p.parse_expr(P, nullptr);
  if (p.peek().k != Tk::End) p.fail("trailing input after expression");
  return P.normal_form(e);
}

// ----------------------------------------------------------------- printer

namespace {

std::string tensor_str(const HopfSuperalgebra& H, const SuperElement& img) {
  if (img.is_zero()) return "0";
  const TensorAlgebra& T = H.tensor_square();
  const SuperPresentation& P = H.algebra();
  std::ostringstream os;
  bool first = true;
  for (auto& t : img.terms) {
    Scalar c = t.c;
    bool negative = false;
    if (P.field().is_rational() && sgn(c.value()) < 0) {
      negative = true;
      c = -c;
    }
    if (first) {
      if (negative) os << "-";
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    if (!c.is_one()) os << c.str() << "*";
    auto legs = T.split(t.m);
    os << P.monomial_str(legs[0]) << " (x) " << P.monomial_str(legs[1]);
  }
  return os.str();
}

void print_hopf(std::ostringstream& os, const Model& m, const HopfSuperalgebra& H) {
  const SuperPresentation& P = H.algebra();
  os << "hopf " << H.name() << " {\n";
  bool any = false;
  for (int i = 0; i < P.n_even(); ++i) {
    if (P.even(i).internal) continue;
    os << (any ? ", " : "  even ") << P.even(i).name;
    if (P.even(i).invertible) os << " inv";
    if (P.even(i).weight != 1) os << " weight " << P.even(i).weight;
    any = true;
  }
  if (any) os << ";\n";
  if (P.n_odd() > 0) {
    os << "  odd ";
    for (int i = 0; i < P.n_odd(); ++i) {
      if (i) os << ", ";
      os << P.odd(i).name;
      if (P.odd(i).weight != 1) os << " weight " << P.odd(i).weight;
    }
    os << ";\n";
  }
  if (!P.relations().empty()) {
    os << "  relations ";
    for (size_t i = 0; i < P.relations().size(); ++i) {
      if (i) os << ", ";
      os << P.str(P.relations()[i]);
    }
    os << ";\n";
  }
  os << "  coproduct {\n";
  {
    int k = 0;
    for (int i = 0; i < P.n_even(); ++i) {
      if (P.even(i).internal) continue;
      os << "    " << P.even(i).name << " = " << tensor_str(H, H.delta_even_images()[k++])
         << ";\n";
    }
    for (int i = 0; i < P.n_odd(); ++i)
      os << "    " << P.odd(i).name << " = " << tensor_str(H, H.delta_odd_images()[i]) << ";\n";
  }
  os << "  }\n";
  {
    std::ostringstream cu;
    int k = 0;
    for (int i = 0; i < P.n_even(); ++i) {
      if (P.even(i).internal) continue;
      if (k) cu << " ";
      cu << P.even(i).name << " = " << H.counit_even_values()[k++].str() << ";";
    }
    if (k) os << "  counit { " << cu.str() << " }\n";
  }
  if (m.antipode_auto(H.name())) {
    os << "  antipode auto;\n";
  } else {
    os << "  antipode {\n";
    int k = 0;
    for (int i = 0; i < P.n_even(); ++i) {
      if (P.even(i).internal) continue;
      os << "    " << P.even(i).name << " = " << P.str(H.antipode_even_images()[k++]) << ";\n";
    }
    for (int i = 0; i < P.n_odd(); ++i)
      os << "    " << P.odd(i).name << " = " << P.str(H.antipode_odd_images()[i]) << ";\n";
    os << "  }\n";
  }
  os << "}\n";
}

}  // namespace

std::string print_presentation(const Model& m) {
  std::ostringstream os;
  if (m.default_bound()) os << "bound " << *m.default_bound() << ";\n";
  bool first = true;
  for (auto& name : m.hopf_order()) {
    if (!first) os << "\n";
    first = false;
    print_hopf(os, m, *m.find_hopf(name));
  }
  for (auto& s : m.subs()) {
    if (!first) os << "\n";
    first = false;
    os << "sub " << s.name << " of " << s.parent << " {\n";
    if (!s.kill_src.empty()) {
      os << "  kill ";
      for (size_t i = 0; i < s.kill_src.size(); ++i) {
        if (i) os << ", ";
        os << s.kill_src[i];
      }
      os << ";\n";
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace sq
