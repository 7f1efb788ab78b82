#include "funring/session.hpp"

#include <algorithm>
#include <sstream>

namespace funring {

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize_line(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;  // comment to end of line
    int col = static_cast<int>(i) + 1;
    if (c == '"') {
      std::size_t j = line.find('"', i + 1);
      if (j == std::string::npos)
        throw SessionError{"unterminated string", lineno, col};
      out.push_back({line.substr(i + 1, j - i - 1), lineno, col});
      i = j + 1;
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({line.substr(i, j - i), lineno, col});
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", lineno, col});
      i += 2;
      continue;
    }
    if (c == '(' && line.compare(i, 3, "(+)") == 0) {
      out.push_back({"(+)", lineno, col});
      i += 3;
      continue;
    }
    out.push_back({std::string(1, c), lineno, col});
    ++i;
  }
  return out;
}

// --- polynomial expression parser -------------------------------------

class PolyParser {
 public:
  PolyParser(const std::string& text, const FunctionRing::Ptr& ring, int line,
             std::map<std::string, Poly> aliases = {})
      : ring_(ring), line_(line), aliases_(std::move(aliases)) {
    toks_ = tokenize_line(text, line);
  }

  Poly parse() {
    Poly p = expr();
    if (pos_ != toks_.size())
      throw SessionError{"unexpected token '" + toks_[pos_].text + "'", line_,
                         toks_[pos_].column};
    return p;
  }

 private:
  const std::string& peek() const {
    static const std::string kEnd;
    return pos_ < toks_.size() ? toks_[pos_].text : kEnd;
  }
  bool accept(const std::string& t) {
    if (peek() == t) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    bool neg = false;
    if (accept("-"))
      neg = true;
    else
      accept("+");
    Poly acc = product();
    if (neg) acc = -acc;
    while (pos_ < toks_.size()) {
      if (accept("+"))
        acc = acc + product();
      else if (accept("-"))
        acc = acc - product();
      else
        break;
    }
    return acc;
  }

  Poly product() {
    Poly acc = factor();
    while (pos_ < toks_.size()) {
      const std::string& t = peek();
      if (t == "*") {
        ++pos_;
        acc = acc.mul(factor());
      } else if (!t.empty() && (ident_char(t[0]) || t == "(")) {
        acc = acc.mul(factor());  // implicit product
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    if (accept("(")) {
      Poly p = expr();
      if (!accept(")"))
        throw SessionError{"expected ')'", line_, column()};
      return power_suffix(std::move(p));
    }
    if (pos_ >= toks_.size())
      throw SessionError{"unexpected end of polynomial", line_, 0};
    Token tok = toks_[pos_++];
    if (tok.text[0] == '$')
      throw SessionError{"tag symbols are reserved", line_, tok.column};
    if (std::isdigit(static_cast<unsigned char>(tok.text[0]))) {
      Rat value(tok.text);
      if (accept("/")) {
        Token den = toks_[pos_++];
        if (den.text.empty() ||
            !std::isdigit(static_cast<unsigned char>(den.text[0])))
          throw SessionError{"expected denominator", line_, den.column};
        value /= Rat(den.text);
      }
      Poly p = Poly::monomial(ring_, ring_->domain().from_rat(value),
                              unit_term());
      return power_suffix(std::move(p));
    }
    return power_suffix(name_factor(tok));
  }

  Term unit_term() const {
    const auto& u = ring_->universe();
    if (u.has_unit()) return u.unit();
    throw SessionError{"constant terms need a ring with unit", line_, 0};
  }

  Poly power_suffix(Poly base) {
    while (accept("^")) {
      if (pos_ >= toks_.size())
        throw SessionError{"expected exponent", line_, 0};
      Token e = toks_[pos_++];
      long n = std::stol(e.text);
      if (n < 0) throw SessionError{"negative exponent", line_, e.column};
      Poly acc = n == 0 ? Poly::monomial(ring_, ring_->domain().one(),
                                         unit_term())
                        : base;
      for (long k = 1; k < n; ++k) acc = acc.mul(base);
      base = std::move(acc);
    }
    return base;
  }

  Poly name_factor(const Token& tok) {
    if (auto it = aliases_.find(tok.text); it != aliases_.end())
      return it->second;
    const auto& u = ring_->universe();
    const auto& names = u.generator_names();
    auto find = [&](const std::string& n) -> int {
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == n) return static_cast<int>(i);
      return -1;
    };
    int idx = find(tok.text);
    if (idx >= 0)
      return Poly::monomial(ring_, ring_->domain().one(), u.generator(idx));
    // juxtaposed single-letter word such as "aba"
    std::vector<int> word;
    for (char c : tok.text) {
      int li = find(std::string(1, c));
      if (li < 0)
        throw SessionError{"unknown name '" + tok.text + "'", line_,
                           tok.column};
      word.push_back(li);
    }
    Poly acc = Poly::monomial(ring_, ring_->domain().one(),
                              u.generator(word[0]));
    for (std::size_t k = 1; k < word.size(); ++k)
      acc = acc.mul(Poly::monomial(ring_, ring_->domain().one(),
                                   u.generator(word[k])));
    return acc;
  }

  int column() const {
    return pos_ < toks_.size() ? toks_[pos_].column : 0;
  }

  FunctionRing::Ptr ring_;
  int line_;
  std::map<std::string, Poly> aliases_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// queries in the formal-variable ring of a polynomial map: z1..zn name the
// map's variables, base generators embed with empty tag words
std::map<std::string, Poly> map_query_aliases(const PolyMap& phi) {
  std::map<std::string, Poly> aliases;
  auto tring = phi.tag_ring_ptr();
  const auto& base = phi.targets()[0].ring()->universe();
  for (std::size_t i = 0; i < phi.targets().size(); ++i)
    aliases["z" + std::to_string(i + 1)] =
        Poly::monomial(tring, tring->domain().one(),
                       Term{base.unit().data, {static_cast<int>(i)}});
  for (std::size_t i = 0; i < base.generator_names().size(); ++i) {
    Term g = base.generator(static_cast<int>(i));
    aliases[base.generator_names()[i]] =
        Poly::monomial(tring, tring->domain().one(), Term{g.data, {}});
  }
  return aliases;
}

// --- ring clause parsing ----------------------------------------------

struct TokenCursor {
  std::vector<Token> toks;
  std::size_t pos = 0;
  int line;

  bool done() const { return pos >= toks.size(); }
  const std::string& peek() const {
    static const std::string kEnd;
    return pos < toks.size() ? toks[pos].text : kEnd;
  }
  Token next(const std::string& what) {
    if (done()) throw SessionError{"expected " + what, line, 0};
    return toks[pos++];
  }
  bool accept(const std::string& t) {
    if (peek() == t) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(const std::string& t) {
    if (!accept(t))
      throw SessionError{"expected '" + t + "'", line,
                         done() ? 0 : toks[pos].column};
  }
};

CoefficientDomain parse_domain(TokenCursor& cur) {
  CoefficientDomain dom = [&]() {
    if (cur.accept("QQ")) return CoefficientDomain::rationals();
    if (cur.accept("ZZ")) {
      if (cur.accept("/")) {
        Token m = cur.next("modulus");
        return CoefficientDomain::quotient(std::stoul(m.text));
      }
      if (cur.accept("@")) {
        cur.expect("divisor");
        return CoefficientDomain::integers_divisor();
      }
      return CoefficientDomain::integers();
    }
    if (cur.accept("GF")) {
      cur.expect("(");
      Token p = cur.next("prime");
      cur.expect(")");
      return CoefficientDomain::prime_field(std::stoul(p.text));
    }
    throw SessionError{"unknown domain '" + cur.peek() + "'", cur.line, 0};
  }();
  while (cur.accept("(+)")) {
    CoefficientDomain right = parse_domain(cur);
    dom = CoefficientDomain::direct_sum(std::move(dom), std::move(right));
    break;
  }
  return dom;
}

OrderingSpec parse_ordering(TokenCursor& cur,
                            const std::vector<std::string>& names,
                            int line) {
  Token kind = cur.next("ordering kind");
  OrderingSpec ord;
  if (kind.text == "deglex")
    ord.kind = OrderingKind::Deglex;
  else if (kind.text == "lex")
    ord.kind = OrderingKind::Lex;
  else if (kind.text == "lenlex")
    ord.kind = OrderingKind::LenLex;
  else if (kind.text == "elems")
    ord.kind = OrderingKind::TableRank;
  else
    throw SessionError{"unknown ordering '" + kind.text + "'", line,
                       kind.column};
  if (cur.accept("(")) {
    std::vector<std::string> prec;
    prec.push_back(cur.next("name").text);
    while (cur.accept(">")) prec.push_back(cur.next("name").text);
    cur.expect(")");
    if (prec.size() != names.size())
      throw SessionError{"precedence must list every generator", line,
                         kind.column};
    ord.precedence.assign(names.size(), -1);
    for (std::size_t rank = 0; rank < prec.size(); ++rank) {
      auto it = std::find(names.begin(), names.end(), prec[rank]);
      if (it == names.end())
        throw SessionError{"unknown name '" + prec[rank] + "' in precedence",
                           line, kind.column};
      ord.precedence[it - names.begin()] = static_cast<int>(rank);
    }
    for (int r : ord.precedence)
      if (r < 0)
        throw SessionError{"precedence must list every generator", line,
                           kind.column};
  }
  return ord;
}

std::vector<int> parse_word(const std::string& text,
                            const std::vector<std::string>& letters,
                            int line, int col) {
  std::vector<int> out;
  if (text == ".") return out;  // the empty word
  auto find = [&](const std::string& n) -> int {
    for (std::size_t i = 0; i < letters.size(); ++i)
      if (letters[i] == n) return static_cast<int>(i);
    return -1;
  };
  int whole = find(text);
  if (whole >= 0) return {whole};
  for (char c : text) {
    int li = find(std::string(1, c));
    if (li < 0)
      throw SessionError{"unknown letter in word '" + text + "'", line, col};
    out.push_back(li);
  }
  return out;
}

TermSum parse_letter_sum(TokenCursor& cur,
                         const std::vector<std::string>& letters, int line) {
  // sums of +-coeff words, '0' for the empty sum; terms as juxtaposed words
  TermSum out;
  if (cur.accept("0")) return out;
  bool neg = cur.accept("-");
  while (true) {
    Rat coeff(1);
    Token t = cur.next("term");
    if (std::isdigit(static_cast<unsigned char>(t.text[0]))) {
      coeff = Rat(t.text);
      cur.accept("*");
      t = cur.next("term");
    }
    std::vector<int> w = parse_word(t.text, letters, line, t.column);
    while (cur.accept("^")) {
      Token e = cur.next("exponent");
      long n = std::stol(e.text);
      std::vector<int> rep;
      for (long k = 0; k < n; ++k) rep.insert(rep.end(), w.begin(), w.end());
      w = std::move(rep);
    }
    out.emplace_back(neg ? -coeff : coeff, Term{std::move(w), {}});
    if (cur.accept("+"))
      neg = false;
    else if (cur.accept("-"))
      neg = true;
    else
      break;
  }
  return out;
}

}  // namespace

Poly parse_poly(const std::string& text, const FunctionRing::Ptr& ring) {
  return PolyParser(text, ring, 0).parse();
}

// --- session parsing ----------------------------------------------------

Session Session::parse(const std::string& text) {
  Session s;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokenize_line(raw, lineno);
    if (toks.empty()) continue;
    TokenCursor cur{toks, 0, lineno};
    std::string head = cur.next("statement").text;
    for (const auto& t : toks)
      if (!t.text.empty() && t.text[0] == '$')
        throw SessionError{"tag symbols are reserved", lineno, t.column};

    if (head == "ring") {
      std::string kind = cur.next("ring kind").text;
      if (kind == "vars" || kind == "solvable") {
        std::vector<std::string> vars;
        while (!cur.done() && cur.peek() != "ord" && cur.peek() != "rels")
          vars.push_back(cur.next("variable").text);
        std::map<std::pair<int, int>, SolvableRelation> rels;
        if (cur.accept("rels")) {
          // relations of the form Xj*Xi = c*XiXj + p
          while (!cur.done() && cur.peek() != "ord") {
            Token a = cur.next("variable");
            cur.expect("*");
            Token b = cur.next("variable");
            cur.expect("=");
            auto find = [&](const std::string& n) {
              auto it = std::find(vars.begin(), vars.end(), n);
              if (it == vars.end())
                throw SessionError{"unknown variable " + n, lineno, a.column};
              return static_cast<int>(it - vars.begin());
            };
            int j = find(a.text), i = find(b.text);
            // collect the right-hand side until ',' or 'ord'
            std::string rhs;
            while (!cur.done() && cur.peek() != "," && cur.peek() != "ord") {
              rhs += cur.next("rhs").text;
              rhs += " ";
            }
            cur.accept(",");
            // parse the right-hand side over a plain commutative universe
            auto tmpu = TermUniverse::commutative(vars,
                                                  {OrderingKind::Deglex, {}});
            auto tmpr =
                FunctionRing::make(tmpu, CoefficientDomain::rationals());
            Poly rp = PolyParser(rhs, tmpr, lineno).parse();
            Term xixj = tmpu->unit();
            xixj.data[i] += 1;
            xixj.data[j] += 1;
            SolvableRelation rel;
            rel.c = Rat(0);
            for (const auto& mn : rp.monomials()) {
              if (mn.term == xixj)
                rel.c = mn.coeff.scalar();
              else
                rel.p.emplace_back(mn.coeff.scalar(), mn.term);
            }
            rels[{j, i}] = rel;
          }
        }
        cur.expect("ord");
        OrderingSpec ord = parse_ordering(cur, vars, lineno);
        cur.expect("over");
        CoefficientDomain dom = parse_domain(cur);
        try {
          auto u = kind == "vars" && rels.empty()
                       ? TermUniverse::commutative(vars, ord)
                       : TermUniverse::solvable(vars, rels, ord);
          s.ring_ = FunctionRing::make(u, std::move(dom));
        } catch (const std::exception& e) {
          throw SessionError{e.what(), lineno, 1};
        }
      } else if (kind == "letters") {
        std::vector<std::string> letters;
        while (!cur.done() && cur.peek() != "rules" && cur.peek() != "ord" &&
               cur.peek() != "table" && cur.peek() != "red")
          letters.push_back(cur.next("letter").text);
        std::vector<SrsRule> rules;
        std::map<std::pair<int, int>, TermSum> entries;
        bool is_table = false;
        if (cur.accept("rules")) {
          // words are single juxtaposed tokens or '*'-joined letter names
          auto side_word = [&](const char* what) {
            Token first = cur.next(what);
            std::vector<int> w =
                parse_word(first.text, letters, lineno, first.column);
            while (cur.accept("*")) {
              Token more = cur.next(what);
              for (int l : parse_word(more.text, letters, lineno, more.column))
                w.push_back(l);
            }
            return w;
          };
          while (!cur.done() && cur.peek() != "ord" && cur.peek() != "red") {
            std::vector<int> lhs = side_word("rule lhs");
            cur.expect("->");
            std::vector<int> rhs = side_word("rule rhs");
            cur.accept(",");
            rules.push_back({std::move(lhs), std::move(rhs)});
          }
        } else if (cur.accept("table")) {
          is_table = true;
          while (!cur.done() && cur.peek() != "ord" && cur.peek() != "red") {
            Token a = cur.next("letter");
            cur.expect("*");
            Token b = cur.next("letter");
            cur.expect("=");
            auto wa = parse_word(a.text, letters, lineno, a.column);
            auto wb = parse_word(b.text, letters, lineno, b.column);
            if (wa.size() != 1 || wb.size() != 1)
              throw SessionError{"table entries pair single letters", lineno,
                                 a.column};
            entries[{wa[0], wb[0]}] = parse_letter_sum(cur, letters, lineno);
          }
        }
        ReductiveKind red = ReductiveKind::Prefix;
        if (cur.accept("red")) {
          Token rk = cur.next("reductive kind");
          if (rk.text == "prefix")
            red = ReductiveKind::Prefix;
          else if (rk.text == "subword")
            red = ReductiveKind::Subword;
          else
            throw SessionError{"unknown reductive kind '" + rk.text + "'",
                               lineno, rk.column};
        }
        cur.expect("ord");
        OrderingSpec ord = parse_ordering(cur, letters, lineno);
        cur.expect("over");
        CoefficientDomain dom = parse_domain(cur);
        try {
          TermUniverse::Ptr u;
          if (is_table)
            u = TermUniverse::letter_table(letters, entries, ord);
          else if (rules.empty())
            u = TermUniverse::free_words(letters, ord, red);
          else
            u = TermUniverse::presented_monoid(letters, rules, ord, red);
          s.ring_ = FunctionRing::make(u, std::move(dom));
        } catch (const std::exception& e) {
          throw SessionError{e.what(), lineno, 1};
        }
      } else {
        throw SessionError{"unknown ring kind '" + kind + "'", lineno, 1};
      }
    } else if (head == "let") {
      if (!s.ring_)
        throw SessionError{"declare a ring before polynomial lists", lineno, 1};
      Token name = cur.next("list name");
      cur.expect("=");
      cur.expect("[");
      // re-split the raw remainder on ';' for polynomial texts
      auto lb = raw.find('[');
      auto rb = raw.rfind(']');
      if (rb == std::string::npos || rb < lb)
        throw SessionError{"expected ']'", lineno, 1};
      std::string body = raw.substr(lb + 1, rb - lb - 1);
      std::vector<Poly> polys;
      std::size_t start = 0;
      while (start <= body.size()) {
        auto semi = body.find(';', start);
        std::string piece = semi == std::string::npos
                                ? body.substr(start)
                                : body.substr(start, semi - start);
        bool blank = piece.find_first_not_of(" \t") == std::string::npos;
        if (!blank) polys.push_back(s.parse_poly_checked(piece, lineno));
        if (semi == std::string::npos) break;
        start = semi + 1;
      }
      s.lists_[name.text] = std::move(polys);
    } else if (head == "set") {
      Token key = cur.next("setting");
      if (key.text == "budget")
        s.budget.work_items = std::stoul(cur.next("value").text);
      else if (key.text == "bound")
        s.budget.multiplier_bound = std::stoi(cur.next("value").text);
      else if (key.text == "seed")
        s.seed = std::stoull(cur.next("value").text);
      else if (key.text == "side")
        s.two_sided = cur.next("value").text == "two";
      else
        throw SessionError{"unknown setting '" + key.text + "'", lineno,
                           key.column};
    } else if (head == "cmd") {
      Command c;
      c.name = cur.next("command").text;
      c.line = lineno;
      while (!cur.done()) c.args.push_back(cur.next("argument").text);
      s.commands_.push_back(std::move(c));
    } else {
      throw SessionError{"unknown statement '" + head + "'", lineno, 1};
    }
  }
  return s;
}

Poly Session::parse_poly_checked(const std::string& text, int line) const {
  if (!ring_) throw SessionError{"no ring declared", line, 1};
  return PolyParser(text, ring_, line).parse();
}

const std::vector<Poly>& Session::list_arg(const Command& cmd,
                                           std::size_t i) const {
  if (i >= cmd.args.size())
    throw SessionError{"missing list argument", cmd.line, 1};
  auto it = lists_.find(cmd.args[i]);
  if (it == lists_.end())
    throw SessionError{"unknown list '" + cmd.args[i] + "'", cmd.line, 1};
  return it->second;
}

IdealHandle Session::handle_for(const std::vector<Poly>& gens) const {
  ReductionSpec spec = default_spec(*ring_, two_sided);
  spec.multiplier_bound = budget.multiplier_bound;
  return IdealHandle(ring_, gens, spec, budget);
}

namespace {

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    default:
      return "unknown";
  }
}

void put(ResultDoc& doc, const std::string& k, const std::string& v) {
  doc.fields.emplace_back(k, v);
}

std::string basis_str(const std::vector<Poly>& basis) {
  if (basis.empty()) return "{}";
  std::string out = "{";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) out += "; ";
    out += basis[i].str();
  }
  return out + "}";
}

// tag symbols print as the z-names accepted by the query parsers
std::string strip_tag_markers(std::string s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '$') continue;
    out += s[i];
  }
  return out;
}

}  // namespace

ResultDoc Session::run_command(const Command& cmd) {
  ResultDoc doc;
  doc.command = cmd.name;
  auto need_arg = [&](std::size_t i) -> const std::string& {
    if (i >= cmd.args.size())
      throw SessionError{"missing argument", cmd.line, 1};
    return cmd.args[i];
  };
  auto mark = [&](Verdict v) {
    if (v == Verdict::Unknown) doc.status = ResultDoc::Status::Indeterminate;
  };

  if (cmd.name == "gb") {
    auto I = handle_for(list_arg(cmd, 0));
    auto res = I.completion();
    bool with_log =
        cmd.args.size() > 1 && cmd.args[1] == "log";
    interreduce_result(res, I.spec());
    put(doc, "basis", basis_str(res.basis));
    put(doc, "completion",
        res.status == CompletionResult::Status::Complete ? "complete"
                                                         : "budget-exhausted");
    if (with_log)
      for (std::size_t i = 0; i < I.completion().log.size(); ++i)
        put(doc, "event" + std::to_string(i + 1), I.completion().log[i]);
    if (res.status != CompletionResult::Status::Complete)
      doc.status = ResultDoc::Status::Indeterminate;
  } else if (cmd.name == "nf") {
    auto I = handle_for(list_arg(cmd, 0));
    Poly f = parse_poly_checked(need_arg(1), cmd.line);
    auto nf = normal_form(f, I.completion().basis, I.spec(), budget.nf_steps);
    put(doc, "normal_form", nf.normal_form.str());
    for (std::size_t i = 0; i < nf.trace.size(); ++i) {
      const auto& st = nf.trace[i];
      std::string entry = "basis" + std::to_string(st.reducer + 1) + " at " +
                          ring_->universe().term_str(st.position);
      if (st.left)
        entry += " left " +
                 Poly::monomial(ring_, st.left->coeff, st.left->term).str();
      entry += " times " +
               Poly::monomial(ring_, st.right.coeff, st.right.term).str();
      put(doc, "step" + std::to_string(i + 1), entry);
    }
    if (nf.budget_exhausted) doc.status = ResultDoc::Status::Indeterminate;
  } else if (cmd.name == "member") {
    auto I = handle_for(list_arg(cmd, 0));
    Poly f = parse_poly_checked(need_arg(1), cmd.line);
    auto m = member(f, I);
    put(doc, "member", verdict_str(m.verdict));
    mark(m.verdict);
  } else if (cmd.name == "represent") {
    auto I = handle_for(list_arg(cmd, 0));
    Poly f = parse_poly_checked(need_arg(1), cmd.line);
    auto rep = represent(f, I);
    std::string out;
    for (std::size_t i = 0; i < rep.size(); ++i) {
      const auto& e = rep[i];
      if (i) out += " + ";
      if (e.left)
        out += "(" +
               Poly::monomial(ring_, e.left->coeff, e.left->term).str() +
               ")o";
      out += "F" + std::to_string(e.gen + 1);
      if (e.right)
        out += "o(" +
               Poly::monomial(ring_, e.right->coeff, e.right->term).str() +
               ")";
    }
    put(doc, "representation", out);
  } else if (cmd.name == "include") {
    auto v = inclusion(handle_for(list_arg(cmd, 0)),
                       handle_for(list_arg(cmd, 1)));
    put(doc, "included", verdict_str(v));
    mark(v);
  } else if (cmd.name == "equal") {
    auto v = equality(handle_for(list_arg(cmd, 0)),
                      handle_for(list_arg(cmd, 1)));
    put(doc, "equal", verdict_str(v));
    mark(v);
  } else if (cmd.name == "trivial") {
    auto v = triviality(handle_for(list_arg(cmd, 0)));
    put(doc, "trivial", verdict_str(v));
    mark(v);
  } else if (cmd.name == "sum" || cmd.name == "product") {
    auto A = handle_for(list_arg(cmd, 0));
    auto B = handle_for(list_arg(cmd, 1));
    auto S = cmd.name == "sum" ? ideal_sum(A, B) : ideal_product(A, B);
    auto res = S.completion();
    interreduce_result(res, S.spec());
    put(doc, "basis", basis_str(res.basis));
  } else if (cmd.name == "intersect") {
    auto I = intersect(handle_for(list_arg(cmd, 0)),
                       handle_for(list_arg(cmd, 1)));
    auto res = I.completion();
    interreduce_result(res, I.spec());
    put(doc, "basis", basis_str(res.basis));
    if (!I.basis_complete()) doc.status = ResultDoc::Status::Indeterminate;
  } else if (cmd.name == "radical") {
    auto v = radical_member(parse_poly_checked(need_arg(1), cmd.line),
                            handle_for(list_arg(cmd, 0)));
    put(doc, "radical_member", verdict_str(v));
    mark(v);
  } else if (cmd.name == "inverse") {
    Poly f = parse_poly_checked(need_arg(0), cmd.line);
    bool left = cmd.args.size() > 1 && cmd.args[1] == "left";
    auto inv = inverse_element(f, left, nullptr, budget);
    put(doc, "invertible", verdict_str(inv.verdict));
    if (inv.inverse) put(doc, "inverse", inv.inverse->str());
    mark(inv.verdict);
  } else if (cmd.name == "invmod") {
    auto I = handle_for(list_arg(cmd, 0));
    Poly f = parse_poly_checked(need_arg(1), cmd.line);
    bool left = cmd.args.size() > 2 && cmd.args[2] == "left";
    auto inv = inverse_element(f, left, &I, budget);
    put(doc, "invertible", verdict_str(inv.verdict));
    if (inv.inverse) put(doc, "inverse", inv.inverse->str());
    mark(inv.verdict);
  } else if (cmd.name == "congruent") {
    auto I = handle_for(list_arg(cmd, 0));
    QuotientContext Q(I);
    bool c = Q.congruent(parse_poly_checked(need_arg(1), cmd.line),
                         parse_poly_checked(need_arg(2), cmd.line));
    put(doc, "congruent", c ? "yes" : "no");
  } else if (cmd.name == "quotient") {
    auto I = handle_for(list_arg(cmd, 0));
    QuotientContext Q(I);
    std::size_t maxres = cmd.args.size() > 1 ? std::stoul(cmd.args[1]) : 16;
    auto table = Q.multiplication_table(maxres, 4);
    put(doc, "table", table.complete ? "complete" : "partial");
    std::string res;
    for (std::size_t i = 0; i < table.residues.size(); ++i) {
      if (i) res += ", ";
      res += ring_->universe().term_str(table.residues[i]);
    }
    put(doc, "residues", res);
    for (std::size_t i = 0; i < table.residues.size(); ++i)
      for (std::size_t j = 0; j < table.residues.size(); ++j)
        put(doc,
            "[" + ring_->universe().term_str(table.residues[i]) + "][" +
                ring_->universe().term_str(table.residues[j]) + "]",
            table.entries[i][j].str());
  } else if (cmd.name == "kernel") {
    PolyMap phi(list_arg(cmd, 0), budget);
    Poly q = PolyParser(need_arg(1), phi.tag_ring_ptr(), cmd.line,
                        map_query_aliases(phi))
                 .parse();
    auto v = phi.kernel_member(q);
    put(doc, "kernel_member", verdict_str(v));
    mark(v);
  } else if (cmd.name == "kernelbasis") {
    PolyMap phi(list_arg(cmd, 0), budget);
    put(doc, "basis", strip_tag_markers(basis_str(phi.kernel_basis())));
    if (!phi.graph_ideal().basis_complete())
      doc.status = ResultDoc::Status::Indeterminate;
  } else if (cmd.name == "preimage") {
    PolyMap phi(list_arg(cmd, 0), budget);
    auto h = phi.preimage(parse_poly_checked(need_arg(1), cmd.line));
    put(doc, "in_image", h ? "yes" : "no");
    if (h) put(doc, "preimage", strip_tag_markers(h->str()));
  } else if (cmd.name == "onto") {
    PolyMap phi(list_arg(cmd, 0), budget);
    auto v = phi.onto();
    put(doc, "onto", verdict_str(v));
    mark(v);
  } else if (cmd.name == "solve") {
    const auto& fs = list_arg(cmd, 0);
    Poly f0 = parse_poly_checked(need_arg(1), cmd.line);
    auto sol = solve_linear_int(fs, f0, budget);
    put(doc, "solvable", sol.solvable ? "yes" : "no");
    if (sol.solvable) {
      std::string xs;
      for (std::size_t i = 0; i < sol.particular.size(); ++i) {
        if (i) xs += "; ";
        xs += sol.particular[i].str();
      }
      put(doc, "particular", "(" + xs + ")");
    }
    for (std::size_t k = 0; k < sol.homogeneous.size(); ++k) {
      std::string xs;
      for (std::size_t i = 0; i < sol.homogeneous[k].size(); ++i) {
        if (i) xs += "; ";
        xs += sol.homogeneous[k][i].str();
      }
      put(doc, "homogeneous" + std::to_string(k + 1), "(" + xs + ")");
    }
    put(doc, "generators", sol.complete ? "complete" : "possibly-incomplete");
    if (!sol.complete) doc.status = ResultDoc::Status::Indeterminate;
  } else if (cmd.name == "probe") {
    int samples = cmd.args.empty() ? 1000 : std::stoi(cmd.args[0]);
    auto rep = axiom_probe(ring_->domain(), samples, seed);
    put(doc, "A1", rep.a1.passed ? "pass" : "fail");
    put(doc, "A2", rep.a2.passed ? "pass" : "fail");
    put(doc, "A3", rep.a3.passed ? "pass" : "fail");
    put(doc, "A4", !rep.a4.checked ? "not-declared"
                                   : (rep.a4.passed ? "pass" : "fail"));
  } else if (cmd.name == "satcheck") {
    const auto& F = list_arg(cmd, 0);
    std::size_t samples = cmd.args.size() > 1 ? std::stoul(cmd.args[1]) : 60;
    ReductionSpec spec = default_spec(*ring_, two_sided);
    auto rep = saturation_check(F, spec, samples);
    put(doc, "weakly_saturated", rep.passed ? "yes" : "no");
    if (!rep.passed)
      put(doc, "witness", rep.failures[0].multiple.str());
  } else if (cmd.name == "saturator") {
    Poly f = parse_poly_checked(need_arg(0), cmd.line);
    ReductionSpec spec = default_spec(*ring_, two_sided);
    auto sat = saturator(f, spec, budget.saturator_bound);
    std::vector<Poly> vals;
    for (const auto& e : sat.elements) vals.push_back(e.value);
    put(doc, "saturator", basis_str(vals));
    put(doc, "closure", sat.complete ? "complete" : "truncated");
  } else if (cmd.name == "spol") {
    Poly p = parse_poly_checked(need_arg(0), cmd.line);
    Poly q = parse_poly_checked(need_arg(1), cmd.line);
    ReductionSpec spec = default_spec(*ring_, two_sided);
    spec.multiplier_bound = budget.multiplier_bound;
    auto [insts, complete] = s_polynomials(p, q, spec,
                                           budget.multiplier_bound);
    for (std::size_t i = 0; i < insts.size(); ++i)
      put(doc, "spol" + std::to_string(i + 1) + "@" +
                   ring_->universe().term_str(insts[i].overlap),
          insts[i].value.str());
    put(doc, "localization", complete ? "complete" : "truncated");
  } else if (cmd.name == "confluence") {
    auto rep = ring_->universe().confluence_report();
    put(doc, "locally_confluent", rep.confluent ? "yes" : "no");
  } else {
    throw SessionError{"unknown command '" + cmd.name + "'", cmd.line, 1};
  }
  return doc;
}

std::vector<ResultDoc> Session::run() {
  std::vector<ResultDoc> out;
  for (const auto& cmd : commands_) {
    try {
      out.push_back(run_command(cmd));
    } catch (const SessionError& e) {
      ResultDoc doc;
      doc.command = cmd.name;
      doc.status = ResultDoc::Status::Error;
      doc.fields.emplace_back("error", e.what());
      out.push_back(std::move(doc));
    } catch (const std::exception& e) {
      ResultDoc doc;
      doc.command = cmd.name;
      doc.status = ResultDoc::Status::Error;
      doc.fields.emplace_back("error", e.what());
      out.push_back(std::move(doc));
    }
  }
  return out;
}

std::string format_output(const std::vector<ResultDoc>& docs, bool machine) {
  std::ostringstream os;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& d = docs[i];
    if (machine) {
      os << "cmd=" << d.command;
      for (const auto& [k, v] : d.fields) os << " " << k << "=|" << v << "|";
      os << " status="
         << (d.status == ResultDoc::Status::Ok
                 ? "ok"
                 : d.status == ResultDoc::Status::Indeterminate
                       ? "indeterminate"
                       : "error")
         << "\n";
    } else {
      os << "== " << d.command << "\n";
      for (const auto& [k, v] : d.fields) os << "  " << k << ": " << v << "\n";
      if (d.status == ResultDoc::Status::Indeterminate)
        os << "  (indeterminate)\n";
      if (d.status == ResultDoc::Status::Error) os << "  (error)\n";
    }
  }
  return os.str();
}

std::vector<std::pair<std::string, std::string>> parse_machine_record(
    const std::string& line) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t eq = line.find('=', i);
    if (eq == std::string::npos) break;
    std::string key = line.substr(i, eq - i);
    std::string value;
    if (eq + 1 < line.size() && line[eq + 1] == '|') {
      std::size_t close = line.find('|', eq + 2);
      if (close == std::string::npos) break;
      value = line.substr(eq + 2, close - eq - 2);
      i = close + 1;
    } else {
      std::size_t sp = line.find(' ', eq + 1);
      value = line.substr(eq + 1, sp == std::string::npos ? std::string::npos
                                                          : sp - eq - 1);
      i = sp == std::string::npos ? line.size() : sp + 1;
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

int exit_code(const std::vector<ResultDoc>& docs) {
  int code = 0;
  for (const auto& d : docs) {
    if (d.status == ResultDoc::Status::Error) return 1;
    if (d.status == ResultDoc::Status::Indeterminate) code = 2;
  }
  return code;
}

}  // namespace funring
