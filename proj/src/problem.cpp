#include "reflode/problem.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <variant>

#include "reflode/errors.hpp"
#include "reflode/format.hpp"
#include "reflode/rational.hpp"

namespace reflode {

namespace {

// A token remembers where it came from so every diagnostic can point at
// the offending line and column (both 1-based).
struct Tok {
  std::string text;
  int line;
  int col;
};

[[noreturn]] void fail(const std::string& msg, int line, int col) {
  std::ostringstream full;
  full << "line " << line << ", column " << col << ": " << msg;
  throw ParseError(full.str(), line, col);
}

[[noreturn]] void fail(const std::string& msg, const Tok& at) {
  fail(msg, at.line, at.col);
}

bool blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

Tok trimmed(const std::string& text, int line, int col) {
  std::size_t b = 0, e = text.size();
  while (b < e && blank(text[b])) ++b;
  while (e > b && blank(text[e - 1])) --e;
  return {text.substr(b, e - b), line, col + int(b)};
}

std::vector<Tok> split(const Tok& t, char sep) {
  std::vector<Tok> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = t.text.find(sep, start);
    const std::size_t end = pos == std::string::npos ? t.text.size() : pos;
    out.push_back(
        trimmed(t.text.substr(start, end - start), t.line, t.col + int(start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

Rational parse_rational(const Tok& t) {
  if (t.text.empty()) fail("expected a number", t);
  const std::size_t slash = t.text.find('/');
  const auto as_int = [&](const Tok& part) -> Int {
    if (part.text.empty()) fail("expected an integer", part);
    std::size_t i = part.text[0] == '-' || part.text[0] == '+' ? 1 : 0;
    if (i == part.text.size()) fail("expected an integer", part);
    for (; i < part.text.size(); ++i)
      if (!std::isdigit((unsigned char)(part.text[i])))
        fail("invalid integer '" + part.text + "'", part);
    return Int(part.text);
  };
  if (slash == std::string::npos) return Rational(as_int(t));
  const Tok num = trimmed(t.text.substr(0, slash), t.line, t.col);
  const Tok den =
      trimmed(t.text.substr(slash + 1), t.line, t.col + int(slash) + 1);
  const Int d = as_int(den);
  if (d == 0) fail("zero denominator", den);
  return Rational(as_int(num), d);
}

// Decimal literal, or exact rational "p/q" converted to double.
double parse_real(const Tok& t) {
  if (t.text.empty()) fail("expected a number", t);
  if (t.text.find('/') != std::string::npos)
    return to_double(parse_rational(t));
  const char* s = t.text.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end != s + t.text.size())
    fail("invalid number '" + t.text + "'", t);
  return v;
}

long parse_int(const Tok& t) {
  if (t.text.empty()) fail("expected an integer", t);
  const char* s = t.text.c_str();
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (end != s + t.text.size())
    fail("invalid integer '" + t.text + "'", t);
  return v;
}

[[noreturn]] void semantic(const std::string& msg) {
  throw SemanticError(msg);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) semantic(std::string(what) + " must be finite");
}

void require_positive(double v, const char* what) {
  require_finite(v, what);
  if (v <= 0.0) semantic(std::string(what) + " must be positive");
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
  // Raw captures; semantic assembly happens after the whole file is read
  // so section order never matters.
  std::optional<Tok> a_tok, b_tok, generators_tok, radius_tok, mode_tok;
  std::optional<Tok> T_tok, h_tok, tol_tok, max_iter_tok, res_tol_tok;
  std::optional<Tok> x0_tok, xdot0_tok;
  std::vector<Tok> term_toks, mono_toks;
  bool saw_nonlinearity = false, saw_ivp = false;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const Tok line = trimmed(raw, line_no, 1);
    if (line.text.empty()) continue;

    if (line.text.front() == '[') {
      if (line.text.back() != ']')
        fail("unterminated section header", line);
      section = line.text.substr(1, line.text.size() - 2);
      if (section != "equation" && section != "basis" &&
          section != "forcing" && section != "nonlinearity" &&
          section != "solver" && section != "ivp")
        fail("unknown section [" + section + "]", line);
      if (section == "nonlinearity") saw_nonlinearity = true;
      if (section == "ivp") saw_ivp = true;
      continue;
    }

    const std::size_t eq = line.text.find('=');
    if (eq == std::string::npos)
      fail("expected 'key = value'", line);
    const Tok key = trimmed(line.text.substr(0, eq), line.line, line.col);
    const Tok value =
        trimmed(line.text.substr(eq + 1), line.line, line.col + int(eq) + 1);
    if (key.text.empty()) fail("missing key before '='", line);
    if (section.empty())
      fail("key '" + key.text + "' appears before any section", key);

    const auto scalar = [&](std::optional<Tok>& slot) {
      if (slot) fail("duplicate key '" + key.text + "'", key);
      slot = value;
    };
    if (section == "equation") {
      if (key.text == "a") scalar(a_tok);
      else if (key.text == "b") scalar(b_tok);
      else fail("unknown key '" + key.text + "' in [equation]", key);
    } else if (section == "basis") {
      if (key.text == "generators") scalar(generators_tok);
      else fail("unknown key '" + key.text + "' in [basis]", key);
    } else if (section == "forcing") {
      if (key.text == "term") term_toks.push_back(value);
      else fail("unknown key '" + key.text + "' in [forcing]", key);
    } else if (section == "nonlinearity") {
      if (key.text == "mono") mono_toks.push_back(value);
      else if (key.text == "radius") scalar(radius_tok);
      else fail("unknown key '" + key.text + "' in [nonlinearity]", key);
    } else if (section == "solver") {
      if (key.text == "mode") scalar(mode_tok);
      else if (key.text == "T") scalar(T_tok);
      else if (key.text == "h") scalar(h_tok);
      else if (key.text == "tol") scalar(tol_tok);
      else if (key.text == "max_iter") scalar(max_iter_tok);
      else if (key.text == "resonance_tol") scalar(res_tol_tok);
      else fail("unknown key '" + key.text + "' in [solver]", key);
    } else {  // ivp
      if (key.text == "x0") scalar(x0_tok);
      else if (key.text == "xdot0") scalar(xdot0_tok);
      else fail("unknown key '" + key.text + "' in [ivp]", key);
    }
  }

  // Equation.
  if (!a_tok) semantic("a is required in [equation]");
  if (!b_tok) semantic("b is required in [equation]");
  EquationParams params{parse_real(*a_tok), parse_real(*b_tok)};
  require_finite(params.a, "a");
  require_finite(params.b, "b");
  if (params.b == 0.0) semantic("b must be nonzero");

  // Basis.
  if (!generators_tok) semantic("generators are required in [basis]");
  std::vector<double> gens;
  for (const Tok& g : split(*generators_tok, ','))
    gens.push_back(parse_real(g));
  FrequencyBasis basis = [&] {
    try {
      return FrequencyBasis(gens);
    } catch (const InvalidParams& e) {
      semantic(e.what());
    }
  }();

  // Forcing terms: "A, B @ r1, r2, ...".
  TrigPoly forcing(basis);
  for (const Tok& term : term_toks) {
    const std::size_t at = term.text.find('@');
    if (at == std::string::npos)
      fail("term needs 'cosAmp, sinAmp @ coordinates'", term);
    const Tok amps = trimmed(term.text.substr(0, at), term.line, term.col);
    const Tok coords =
        trimmed(term.text.substr(at + 1), term.line, term.col + int(at) + 1);
    const std::vector<Tok> amp_parts = split(amps, ',');
    if (amp_parts.size() != 2)
      fail("term needs exactly two amplitudes before '@'", amps);
    const std::vector<Tok> coord_parts = split(coords, ',');
    if (coord_parts.size() != basis.generators().size())
      fail("term has " + std::to_string(coord_parts.size()) +
               " coordinates for " +
               std::to_string(basis.generators().size()) + " generators",
           coords);
    std::vector<Rational> c;
    for (const Tok& part : coord_parts) c.push_back(parse_rational(part));
    forcing.add_term(c, parse_real(amp_parts[0]), parse_real(amp_parts[1]));
  }

  // Nonlinearity.
  std::optional<NonlinearitySpec> nonlinearity;
  if (saw_nonlinearity) {
    NonlinearitySpec nl;
    for (const Tok& mono : mono_toks) {
      const std::vector<Tok> parts = split(mono, ',');
      if (parts.size() != 3)
        fail("mono needs 'coefficient, p, q'", mono);
      const double c = parse_real(parts[0]);
      const long p = parse_int(parts[1]);
      const long q = parse_int(parts[2]);
      require_finite(c, "monomial coefficient");
      if (p < 0 || q < 0) semantic("monomial exponents must be nonnegative");
      if (p + q == 0)
        semantic("monomial must depend on x or x(-t)");
      nl.monomials.push_back({c, unsigned(p), unsigned(q)});
    }
    if (radius_tok) nl.radius = parse_real(*radius_tok);
    require_positive(nl.radius, "radius");
    nonlinearity = std::move(nl);
  }

  // Solver settings.
  SolverSettings solver;
  if (mode_tok) {
    if (mode_tok->text == "spectral") solver.mode = SolveMode::Spectral;
    else if (mode_tok->text == "grid") solver.mode = SolveMode::Grid;
    else if (mode_tok->text == "picard") solver.mode = SolveMode::Picard;
    else fail("mode must be spectral, grid, or picard", *mode_tok);
  }
  if (T_tok) solver.halfwidth = parse_real(*T_tok);
  if (h_tok) solver.step = parse_real(*h_tok);
  if (tol_tok) solver.tol = parse_real(*tol_tok);
  if (max_iter_tok) solver.max_iter = int(parse_int(*max_iter_tok));
  if (res_tol_tok) solver.resonance_tol = parse_real(*res_tol_tok);
  require_positive(solver.halfwidth, "T");
  require_positive(solver.step, "h");
  require_positive(solver.tol, "tol");
  require_positive(solver.resonance_tol, "resonance_tol");
  if (solver.max_iter < 1) semantic("max_iter must be at least 1");
  if (solver.mode == SolveMode::Picard && !nonlinearity)
    semantic("mode picard requires a [nonlinearity] section");

  // Initial values make sense only where initial-value problems do.
  std::optional<IvpSpec> ivp;
  if (saw_ivp) {
    if (!x0_tok) semantic("x0 is required in [ivp]");
    if (!xdot0_tok) semantic("xdot0 is required in [ivp]");
    IvpSpec iv{parse_real(*x0_tok), parse_real(*xdot0_tok)};
    require_finite(iv.x0, "x0");
    require_finite(iv.xdot0, "xdot0");
    if (!std::holds_alternative<Oscillatory>(classify(params)))
      semantic("ivp requires the oscillatory regime (-a < b < a)");
    ivp = iv;
  }

  return ProblemSpec{params,       basis, std::move(forcing),
                     std::move(nonlinearity), solver, ivp};
}

std::string emit_problem(const ProblemSpec& spec) {
  std::ostringstream out;
  out << "[equation]\n";
  out << "a = " << fmt_g17(spec.params.a) << "\n";
  out << "b = " << fmt_g17(spec.params.b) << "\n";

  out << "\n[basis]\ngenerators = ";
  bool first = true;
  for (double g : spec.basis.generators()) {
    if (!first) out << ", ";
    out << fmt_g17(g);
    first = false;
  }
  out << "\n";

  out << "\n[forcing]\n";
  for (const auto& [f, c] : spec.forcing.terms()) {
    out << "term = " << fmt_g17(c.cos_c) << ", " << fmt_g17(c.sin_c) << " @ ";
    first = true;
    for (const Rational& q : f.coords()) {
      if (!first) out << ", ";
      out << to_string(q);
      first = false;
    }
    out << "\n";
  }

  if (spec.nonlinearity) {
    out << "\n[nonlinearity]\n";
    for (const Monomial& m : spec.nonlinearity->monomials)
      out << "mono = " << fmt_g17(m.c) << ", " << m.p << ", " << m.q << "\n";
    out << "radius = " << fmt_g17(spec.nonlinearity->radius) << "\n";
  }

  out << "\n[solver]\n";
  out << "mode = " << mode_name(spec.solver.mode) << "\n";
  out << "T = " << fmt_g17(spec.solver.halfwidth) << "\n";
  out << "h = " << fmt_g17(spec.solver.step) << "\n";
  out << "tol = " << fmt_g17(spec.solver.tol) << "\n";
  out << "max_iter = " << spec.solver.max_iter << "\n";
  out << "resonance_tol = " << fmt_g17(spec.solver.resonance_tol) << "\n";

  if (spec.ivp) {
    out << "\n[ivp]\n";
    out << "x0 = " << fmt_g17(spec.ivp->x0) << "\n";
    out << "xdot0 = " << fmt_g17(spec.ivp->xdot0) << "\n";
  }
  return out.str();
}

const char* mode_name(SolveMode m) {
  switch (m) {
    case SolveMode::Spectral: return "spectral";
    case SolveMode::Grid: return "grid";
    case SolveMode::Picard: return "picard";
  }
  return "spectral";
}

}  // namespace reflode
