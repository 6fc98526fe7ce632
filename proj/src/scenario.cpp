#include "mkin/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "mkin/angle.hpp"
#include "mkin/curvature.hpp"
#include "mkin/error.hpp"
#include "mkin/kinematics.hpp"
#include "mkin/output.hpp"
#include "text.hpp"

namespace mkin {

namespace {

// ---- tokenizer -------------------------------------------------------------

enum class Tok { word, string, sym, newline, end };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ':' ||
         c == '+' || c == '-' || c == '/' || c == ';';
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (c == '\n') {
      out.push_back({Tok::newline, "\n", line, col});
      advance(1);
    } else if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
    } else if (c == '"') {
      const int l = line, cc = col;
      advance(1);
      std::string s;
      while (true) {
        if (i >= src.size() || src[i] == '\n') {
          throw ParseError(ErrorCode::ParseError, l, cc, "unterminated string");
        }
        if (src[i] == '"') break;
        if (src[i] == '\\' && i + 1 < src.size()) advance(1);
        s += src[i];
        advance(1);
      }
      advance(1);
      out.push_back({Tok::string, s, l, cc});
    } else if (std::string_view("={}[](),").find(c) != std::string_view::npos) {
      out.push_back({Tok::sym, std::string(1, c), line, col});
      advance(1);
    } else if (word_char(c)) {
      const int l = line, cc = col;
      std::string s;
      while (i < src.size() && word_char(src[i])) {
        s += src[i];
        advance(1);
      }
      out.push_back({Tok::word, s, l, cc});
    } else {
      throw ParseError(ErrorCode::ParseError, line, col,
                       std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

// ---- parser ----------------------------------------------------------------

struct Value {
  bool is_list = false;
  std::string text;
  std::vector<Vec2> points;
  int line = 0, col = 0;
};

[[noreturn]] void fail(const Value& v, ErrorCode code, const std::string& what) {
  throw ParseError(code, v.line, v.col, what);
}

double number(const Value& v, const std::string& key) {
  if (v.is_list) fail(v, ErrorCode::ParseError, key + ": expected a number");
  try {
    return text::parse_double(v.text);
  } catch (const Error&) {
    fail(v, ErrorCode::ParseError, key + ": '" + v.text + "' is not a number");
  }
}

int integer(const Value& v, const std::string& key) {
  const double d = number(v, key);
  if (d != std::floor(d) || std::abs(d) > 1e9) fail(v, ErrorCode::ParseError, key + ": expected an integer");
  return static_cast<int>(d);
}

bool boolean(const Value& v, const std::string& key) {
  if (!v.is_list && (v.text == "true" || v.text == "on" || v.text == "1")) return true;
  if (!v.is_list && (v.text == "false" || v.text == "off" || v.text == "0")) return false;
  fail(v, ErrorCode::ParseError, key + ": expected true or false");
}

std::string string_value(const Value& v, const std::string& key) {
  if (v.is_list) fail(v, ErrorCode::ParseError, key + ": expected a string");
  return v.text;
}

void check_ball(const Value& v) {
  const std::string s = v.text;
  if (s == "euclidean") return;
  auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (kind == "lp") {
    try {
      if (text::parse_double(arg) >= 1.0) return;
    } catch (const Error&) {
    }
    fail(v, ErrorCode::ParseError, "ball: bad exponent in '" + s + "'");
  }
  if ((kind == "polygon" || kind == "radial") && !arg.empty()) return;
  fail(v, ErrorCode::ParseError, "ball: unknown ball kind '" + s + "'");
}

void check_measure(const Value& v) {
  const std::string& s = v.text;
  if (s.empty() || s == "arclen" || s == "area" || (s.rfind("density:", 0) == 0 && s.size() > 8)) return;
  fail(v, ErrorCode::ParseError, "measure: unknown measure '" + s + "'");
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Scenario parse() {
    Scenario s;
    while (true) {
      skip_separators(false);
      if (peek().kind == Tok::end) break;
      const Token key = expect_word();
      if (is_sym("{")) {
        ++p_;
        block(s, key);
      } else {
        expect_sym("=");
        const Value v = value();
        top(s, key, v);
        end_of_statement();
      }
    }
    validate(s);
    return s;
  }

 private:
  const Token& peek() const { return t_[p_]; }
  bool is_sym(const char* c) const { return peek().kind == Tok::sym && peek().text == c; }

  [[noreturn]] void error_here(const std::string& what) const {
    throw ParseError(ErrorCode::ParseError, peek().line, peek().col, what);
  }

  void skip_separators(bool commas) {
    while (peek().kind == Tok::newline || (commas && is_sym(","))) ++p_;
  }

  Token expect_word() {
    if (peek().kind != Tok::word) error_here("expected a key");
    return t_[p_++];
  }

  void expect_sym(const char* c) {
    if (!is_sym(c)) error_here(std::string("expected '") + c + "'");
    ++p_;
  }

  void end_of_statement() {
    if (peek().kind == Tok::newline || peek().kind == Tok::end) return;
    error_here("expected end of line");
  }

  Value value() {
    Value v;
    v.line = peek().line;
    v.col = peek().col;
    if (peek().kind == Tok::word || peek().kind == Tok::string) {
      v.text = t_[p_++].text;
      return v;
    }
    if (is_sym("[")) {
      ++p_;
      v.is_list = true;
      skip_separators(false);
      while (!is_sym("]")) {
        expect_sym("(");
        const Value x = value();
        expect_sym(",");
        const Value y = value();
        expect_sym(")");
        v.points.push_back({number(x, "point"), number(y, "point")});
        skip_separators(false);
        if (is_sym(",")) {
          ++p_;
          skip_separators(false);
        } else if (!is_sym("]")) {
          error_here("expected ',' or ']'");
        }
      }
      ++p_;
      return v;
    }
    error_here("expected a value");
  }

  void top(Scenario& s, const Token& key, const Value& v) {
    const std::string& k = key.text;
    if (k == "ball") {
      s.ball = string_value(v, k);
      check_ball(v);
    } else if (k == "measure") {
      s.measure = string_value(v, k);
      check_measure(v);
    } else if (k == "seed") {
      const double d = number(v, k);
      if (d < 0 || d != std::floor(d)) fail(v, ErrorCode::ParseError, "seed: expected a nonnegative integer");
      s.seed = static_cast<std::uint64_t>(d);
    } else if (k == "track") {
      if (!v.is_list) fail(v, ErrorCode::ParseError, "track: expected a point list");
      s.track = v.points;
    } else {
      throw ParseError(ErrorCode::UnknownKey, key.line, key.col, "unknown key '" + k + "'");
    }
  }

  void block(Scenario& s, const Token& name) {
    const std::string& b = name.text;
    static const char* kBlocks[] = {"curves", "motion", "verify", "tolerance", "numerics", "output"};
    if (std::find(std::begin(kBlocks), std::end(kBlocks), b) == std::end(kBlocks)) {
      throw ParseError(ErrorCode::UnknownKey, name.line, name.col, "unknown block '" + b + "'");
    }
    if (b == "motion") s.motion.present = true;
    while (true) {
      skip_separators(true);
      if (is_sym("}")) {
        ++p_;
        break;
      }
      if (peek().kind == Tok::end) error_here("missing '}' for block '" + b + "'");
      const Token key = expect_word();
      expect_sym("=");
      const Value v = value();
      entry(s, b, key, v);
      if (!(peek().kind == Tok::newline || is_sym(",") || is_sym("}"))) {
        error_here("expected ',', newline or '}'");
      }
    }
    end_of_statement();
  }

  void entry(Scenario& s, const std::string& b, const Token& key, const Value& v) {
    const std::string& k = key.text;
    auto unknown = [&]() -> void {
      throw ParseError(ErrorCode::UnknownKey, key.line, key.col,
                       "unknown key '" + k + "' in block '" + b + "'");
    };
    if (b == "curves") {
      for (const auto& c : s.curves) {
        if (c.first == k) {
          throw ParseError(ErrorCode::ParseError, key.line, key.col, "curve '" + k + "' defined twice");
        }
      }
      s.curves.emplace_back(k, string_value(v, k));
      locs_[k] = v;
    } else if (b == "motion") {
      if (k == "fixed") {
        s.motion.fixed = string_value(v, k);
        locs_["motion.fixed"] = v;
      } else if (k == "moving") {
        s.motion.moving = string_value(v, k);
        locs_["motion.moving"] = v;
      } else if (k == "steps") {
        s.motion.steps = integer(v, k);
        if (s.motion.steps < 16) fail(v, ErrorCode::ParseError, "steps: need at least 16");
      } else if (k == "s_max") {
        s.motion.s_max = number(v, k);
        if (!(s.motion.s_max > 0.0)) fail(v, ErrorCode::ParseError, "s_max: must be positive");
      } else {
        unknown();
      }
    } else if (b == "verify") {
      auto& f = s.verify;
      if (k == "statement1") f.statement1 = boolean(v, k);
      else if (k == "es1") f.es1 = boolean(v, k);
      else if (k == "es2") f.es2 = boolean(v, k);
      else if (k == "combined") f.combined = boolean(v, k);
      else if (k == "brass") f.brass = boolean(v, k);
      else if (k == "group_laws") f.group_laws = boolean(v, k);
      else if (k == "inflection") f.inflection = boolean(v, k);
      else if (k == "cusps") f.cusps = integer(v, k);
      else unknown();
    } else if (b == "tolerance") {
      auto& t = s.tolerance;
      double* slot = k == "statement1" ? &t.statement1
                     : k == "es1"      ? &t.es1
                     : k == "es2"      ? &t.es2
                     : k == "combined" ? &t.combined
                     : k == "inflection" ? &t.inflection
                     : k == "laws"     ? &t.laws
                                       : nullptr;
      if (!slot) unknown();
      *slot = number(v, k);
      if (!(*slot >= 0.0)) fail(v, ErrorCode::ParseError, k + ": tolerance must be nonnegative");
    } else if (b == "numerics") {
      auto& n = s.numerics;
      if (k == "h") n.h = number(v, k);
      else if (k == "trace_h") n.trace_h = number(v, k);
      else if (k == "fan_radius") n.fan_radius = number(v, k);
      else if (k == "fan") n.fan = integer(v, k);
      else if (k == "samples") n.samples = integer(v, k);
      else unknown();
      if (!(n.h > 0.0 && n.trace_h > 0.0 && n.fan_radius > 0.0)) {
        fail(v, ErrorCode::ParseError, k + ": must be positive");
      }
      if (n.fan < 4 || n.samples < 64) fail(v, ErrorCode::ParseError, k + ": too small");
    } else if (b == "output") {
      auto& o = s.output;
      std::string* slot = k == "roulette_csv"     ? &o.roulette_csv
                          : k == "inflection_csv" ? &o.inflection_csv
                          : k == "svg"            ? &o.svg
                          : k == "report"         ? &o.report
                          : k == "report_csv"     ? &o.report_csv
                                                  : nullptr;
      if (!slot) unknown();
      *slot = string_value(v, k);
    }
  }

  // Curve references are checked by building every curve in the Euclidean
  // plane; only unitcircle depends on the ball and it never fails.
  void validate(const Scenario& s) {
    const PlaneContext probe = PlaneContext::euclidean(256);
    std::map<std::string, Curve> built;
    curves::Resolver resolve = [&built](std::string_view name) -> std::optional<Curve> {
      auto it = built.find(std::string(name));
      if (it == built.end()) return std::nullopt;
      return it->second;
    };
    auto build = [&](const std::string& spec, const Value& where) {
      try {
        return curves::from_spec(spec, probe, resolve);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.code(), where.line, where.col, e.what());
      }
    };
    for (const auto& [name, spec] : s.curves) built.emplace(name, build(spec, locs_[name]));
    if (s.motion.present) {
      if (s.motion.fixed.empty() || s.motion.moving.empty()) {
        throw ParseError(ErrorCode::ParseError, peek().line, peek().col,
                         "motion needs both fixed and moving");
      }
      build(s.motion.fixed, locs_["motion.fixed"]);
      build(s.motion.moving, locs_["motion.moving"]);
    }
  }

  std::vector<Token> t_;
  std::size_t p_ = 0;
  std::map<std::string, Value> locs_;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

// ---- runner ----------------------------------------------------------------

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MKIN_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
  const int k = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (k == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < k; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string point_label(std::size_t i) { return "P" + std::to_string(i); }

// Order >= 1, or stencil values already equal to rounding level.
bool converged(const numerics::LimitEstimate& e) {
  return e.observed_order >= 1.0 ||
         std::abs(e.raw[0] - e.raw[2]) <= 1e-7 * std::max(1.0, std::abs(e.value));
}

// Rounding level of a central difference at h = 1e-6 (eps |x| / h for |x| ~ 10).
constexpr double kResidualFloor = 1e-8;

void finish(CheckResult& c) {
  c.residual = 0.0;
  for (const auto& r : c.rows) {
    if (std::isfinite(r.residual)) c.residual = std::max(c.residual, r.residual);
  }
}

struct World {
  PlaneContext ctx;
  std::map<std::string, Curve> curves;
  std::optional<Curve> fixed, moving;
  std::optional<RollingMotion> motion;
};

Curve resolve_curve(const std::string& spec, const World& w) {
  return curves::from_spec(spec, w.ctx, [&w](std::string_view name) -> std::optional<Curve> {
    auto it = w.curves.find(std::string(name));
    if (it == w.curves.end()) return std::nullopt;
    return it->second;
  });
}

const RollingMotion& need_motion(const World& w) {
  if (!w.motion) throw Error(ErrorCode::BadParams, "scenario has no motion");
  return *w.motion;
}

void need_track(const Scenario& s) {
  if (s.track.empty()) throw Error(ErrorCode::BadParams, "scenario has no tracked points");
}

CheckResult check_statement1(const Scenario& s, const World& w) {
  CheckResult c{"statement1"};
  c.tolerance = s.tolerance.statement1;
  const RollingMotion& m = need_motion(w);
  need_track(s);
  const double hs[3] = {1e-4, 1e-5, 1e-6};
  bool monotone = true;
  const int states = 20;
  for (std::size_t i = 0; i < s.track.size(); ++i) {
    for (int k = 0; k < states; ++k) {
      const double sk = m.beta() * (k + 0.5) / states;
      double r[3];
      try {
        for (int j = 0; j < 3; ++j) {
          r[j] = instantaneous_pole_check(RouletteTrace{s.track[i], hs[j], {}}, m, w.ctx, sk);
        }
      } catch (const Error& e) {
        if (e.code() == ErrorCode::PoleCoincidence) continue;
        throw;
      }
      monotone = monotone && (r[1] <= r[0] || r[1] <= kResidualFloor) &&
                 (r[2] <= r[1] || r[2] <= kResidualFloor);
      const double order = (r[0] > 0 && r[2] > 0) ? std::log10(r[0] / r[2]) / 2.0 : NAN;
      c.orders.push_back(order);
      c.rows.push_back({"statement1[" + point_label(i) + "](s=" + text::format_sig(sk, 6) + ")",
                        r[1], 0.0, r[1], hs[1], order});
    }
  }
  finish(c);
  c.pass = !c.rows.empty() && c.residual <= c.tolerance && monotone;
  if (!monotone) c.error = "residual does not decrease monotonically under h-refinement";
  return c;
}

CheckResult check_es1(const Scenario& s, const World& w) {
  CheckResult c{"es1"};
  c.tolerance = s.tolerance.es1;
  const RollingMotion& m = need_motion(w);
  need_track(s);
  bool ok = true;
  for (std::size_t i = 0; i < s.track.size(); ++i) {
    const EsFirst e = es_first(m, w.ctx, s.track[i], s.numerics.h);
    const std::string tag = "es1[" + point_label(i) + "]";
    c.rows.push_back({tag + ".first", e.radius, e.radius_predicted, e.residual_first, e.chi.h,
                      e.chi.observed_order});
    c.rows.push_back({tag + ".directed", 1.0 / e.KP - 1.0 / e.KO, 1.0 / e.KI, e.residual_directed,
                      e.chi.h, e.chi.observed_order});
    c.orders.push_back(e.chi.observed_order);
    ok = ok && converged(e.chi);
  }
  finish(c);
  c.pass = c.residual <= c.tolerance && ok;
  if (!ok) c.error = "roulette curvature shows no convergence under h-halving";
  return c;
}

CheckResult check_es2(const Scenario& s, const World& w) {
  CheckResult c{"es2"};
  c.tolerance = s.tolerance.es2;
  const EsSecond e = es_second(need_motion(w), w.ctx, s.numerics.h);
  c.rows.push_back({"es2", e.lhs, e.rhs, e.residual, s.numerics.h, e.observed_order});
  // alpha_K from the chain rule against the one implied by the limit route.
  const double implied = std::abs(e.rhs) * e.alpha_K / std::abs(e.lhs);
  c.rows.push_back({"es2.alpha_K", e.alpha_K, implied, std::abs(e.alpha_K - implied) / e.alpha_K,
                    s.numerics.h, e.observed_order});
  c.orders.push_back(e.observed_order);
  finish(c);
  c.pass = c.residual <= c.tolerance &&
           converged(e.chi_fixed) && converged(e.chi_moving);
  return c;
}

CheckResult check_combined(const Scenario& s, const World& w) {
  CheckResult c{"combined"};
  c.tolerance = s.tolerance.combined;
  const RollingMotion& m = need_motion(w);
  double lambda = 1.0;
  const PlaneContext unit = normalized_context(w.ctx, &lambda);
  const RollingMotion mn(*w.fixed, *w.moving, unit, s.motion.steps, m.beta() / lambda);
  const Vec2 K = m.pole(0.0);
  const int fan = 16;
  for (int i = 0; i < fan; ++i) {
    const Vec2 u = from_angle(kTwoPi * (i + 0.5) / fan);
    const Vec2 P = K + (s.numerics.fan_radius / w.ctx.norm(u)) * u;
    try {
      const EsCombined e = es_combined(mn, unit, P, s.numerics.h / lambda);
      c.rows.push_back({"combined[" + std::to_string(i) + "]", e.lhs, e.rhs, e.residual,
                        s.numerics.h / lambda, NAN});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OnInflectionCurve) throw;
    }
  }
  c.rows.push_back({"combined.scale", lambda, unit.sigma_plane(), NAN, NAN, NAN});
  finish(c);
  c.pass = c.rows.size() > 1 && c.residual <= c.tolerance;
  return c;
}

CheckResult check_inflection(const Scenario& s, const World& w, const InflectionCurve& ic) {
  CheckResult c{"inflection"};
  c.tolerance = s.tolerance.inflection;
  (void)need_motion(w);
  double mem = 0.0, refl = 0.0;
  for (const auto& p : ic.points) {
    if (!p.found) continue;
    mem = std::max(mem, p.membership);
    refl = std::max(refl, norm_e(p.point + p.ret - 2.0 * ic.frame.K));
  }
  const bool star = inflection_starlike(ic);
  c.rows.push_back({"inflection.membership", mem, 0.0, mem, NAN, NAN});
  c.rows.push_back({"inflection.return", refl, 0.0, refl, NAN, NAN});
  c.rows.push_back({"inflection.starlike", star ? 1.0 : 0.0, 1.0, star ? 0.0 : 1.0, NAN, NAN});
  if (w.ctx.kind() == BallKind::euclidean) {
    const Vec2 mid = (ic.frame.K + ic.frame.L) / 2.0;
    const double rad = norm_e(ic.frame.L - ic.frame.K) / 2.0;
    double dev = 0.0;
    for (const auto& p : ic.points) {
      if (p.found) dev = std::max(dev, std::abs(norm_e(p.point - mid) - rad));
    }
    c.rows.push_back({"inflection.thales", dev, 0.0, dev, NAN, NAN});
  } else {
    c.rows.push_back(
        {"inflection.spread", minkowski_radial_spread(ic, w.ctx), 1e-3, NAN, NAN, NAN});
  }
  finish(c);
  c.pass = star && c.residual <= std::max(c.tolerance, 1e-12);
  return c;
}

AngleMeasure scenario_measure(const Scenario& s, const World& w) {
  const StarlikeCurve carrier(curves::unit_circle(w.ctx), {0.0, 0.0});
  return AngleMeasure::from_spec(s.measure.empty() ? "arclen" : s.measure, carrier, w.ctx);
}

CheckResult check_brass(const Scenario& s, const World& w) {
  CheckResult c{"brass"};
  const BrassReport b = brass_check(scenario_measure(s, w));
  auto flag = [&](const char* name, bool v) {
    c.rows.push_back({std::string("brass.") + name, v ? 1.0 : 0.0, 1.0, v ? 0.0 : 1.0, NAN, NAN});
  };
  flag("total", b.total_ok);
  flag("symmetric", b.symmetric);
  flag("atomless", b.atomless);
  finish(c);
  c.pass = b.total_ok && b.symmetric && b.atomless;
  return c;
}

CheckResult check_laws(const Scenario& s, const World& w) {
  CheckResult c{"laws"};
  c.tolerance = s.tolerance.laws;
  const AngleMeasure m = scenario_measure(s, w);
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi), coord(-1.5, 1.5);
  double comp = 0.0, inv = 0.0, hom = 0.0;
  const Vec2 p = m.center();
  for (int i = 0; i < 200; ++i) {
    const GeneralRotation r1(m, angle(rng)), r2(m, angle(rng));
    Vec2 q{coord(rng), coord(rng)};
    if (q == p) q.x += 0.5;
    comp = std::max(comp, norm_e(compose(r1, r2).apply(q) - r1.apply(r2.apply(q))));
    inv = std::max(inv, norm_e(inverse(r1).apply(r1.apply(q)) - q));
    for (double a : {0.5, 2.0, 3.0}) {
      hom = std::max(hom, norm_e(r1.apply(p + a * (q - p)) - (p + a * (r1.apply(q) - p))));
    }
  }
  c.rows.push_back({"laws.compose", comp, 0.0, comp, NAN, NAN});
  c.rows.push_back({"laws.inverse", inv, 0.0, inv, NAN, NAN});
  c.rows.push_back({"laws.homothety", hom, 0.0, hom, NAN, NAN});
  finish(c);
  c.pass = c.residual <= c.tolerance;
  return c;
}

CheckResult check_cusps(const Scenario& s, const std::vector<RouletteTrace>& traces) {
  CheckResult c{"cusps"};
  if (traces.empty()) throw Error(ErrorCode::BadParams, "scenario has no tracked points");
  const double found = static_cast<double>(cusp_parameters(traces.front()).size());
  c.rows.push_back({"cusps[P0]", found, static_cast<double>(s.verify.cusps),
                    std::abs(found - s.verify.cusps), NAN, NAN});
  finish(c);
  c.pass = c.residual == 0.0;
  return c;
}

std::string resolve_path(const std::string& path, const RunOptions& opt) {
  if (opt.out_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(opt.out_dir) / path).string();
}

std::string indexed_path(const std::string& path, std::size_t i, std::size_t n) {
  if (n <= 1) return path;
  const std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "_" + std::to_string(i) + p.extension().string()))
      .string();
}

std::string fmt_point(Vec2 p) {
  return "(" + text::format_sig(p.x) + ", " + text::format_sig(p.y) + ")";
}

}  // namespace

Scenario parse_scenario(std::string_view source) { return Parser(tokenize(source)).parse(); }

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string print_scenario(const Scenario& s) {
  using text::format_double;
  std::ostringstream os;
  os << "ball = " << quote(s.ball) << '\n';
  if (!s.measure.empty()) os << "measure = " << quote(s.measure) << '\n';
  os << "seed = " << s.seed << '\n';
  if (!s.track.empty()) {
    os << "track = [";
    for (std::size_t i = 0; i < s.track.size(); ++i) {
      os << (i ? ", " : "") << '(' << format_double(s.track[i].x) << ", "
         << format_double(s.track[i].y) << ')';
    }
    os << "]\n";
  }
  if (!s.curves.empty()) {
    os << "curves {\n";
    for (const auto& [name, spec] : s.curves) os << "  " << name << " = " << quote(spec) << '\n';
    os << "}\n";
  }
  if (s.motion.present) {
    os << "motion {\n  fixed = " << quote(s.motion.fixed) << "\n  moving = " << quote(s.motion.moving)
       << "\n  steps = " << s.motion.steps << '\n';
    if (s.motion.s_max > 0.0) os << "  s_max = " << format_double(s.motion.s_max) << '\n';
    os << "}\n";
  }
  const auto& v = s.verify;
  auto b = [](bool x) { return x ? "true" : "false"; };
  os << "verify {\n  statement1 = " << b(v.statement1) << "\n  es1 = " << b(v.es1)
     << "\n  es2 = " << b(v.es2) << "\n  combined = " << b(v.combined) << "\n  brass = "
     << b(v.brass) << "\n  group_laws = " << b(v.group_laws) << "\n  inflection = "
     << b(v.inflection) << "\n  cusps = " << v.cusps << "\n}\n";
  const auto& t = s.tolerance;
  os << "tolerance {\n  statement1 = " << format_double(t.statement1)
     << "\n  es1 = " << format_double(t.es1) << "\n  es2 = " << format_double(t.es2)
     << "\n  combined = " << format_double(t.combined)
     << "\n  inflection = " << format_double(t.inflection)
     << "\n  laws = " << format_double(t.laws) << "\n}\n";
  const auto& n = s.numerics;
  os << "numerics {\n  h = " << format_double(n.h) << "\n  trace_h = " << format_double(n.trace_h)
     << "\n  fan = " << n.fan << "\n  fan_radius = " << format_double(n.fan_radius)
     << "\n  samples = " << n.samples << "\n}\n";
  const auto& o = s.output;
  std::vector<std::pair<const char*, const std::string*>> outs = {
      {"roulette_csv", &o.roulette_csv}, {"inflection_csv", &o.inflection_csv},
      {"svg", &o.svg}, {"report", &o.report}, {"report_csv", &o.report_csv}};
  bool any = false;
  for (const auto& [k, val] : outs) any = any || !val->empty();
  if (any) {
    os << "output {\n";
    for (const auto& [k, val] : outs) {
      if (!val->empty()) os << "  " << k << " = " << quote(*val) << '\n';
    }
    os << "}\n";
  }
  return os.str();
}

Scenario hypocycloid_scenario(int n, const std::string& ball) {
  if (n < 2) throw Error(ErrorCode::BadParams, "hypocycloids need n >= 2");
  Scenario s;
  s.ball = ball;
  const Vec2 start = PlaneContext::from_spec(ball, 512).boundary_point(0.0);
  s.curves = {{"fixed", "unitcircle"},
              {"wheel", "homothet:fixed;" + text::format_double(start.x) + "," +
                            text::format_double(start.y) + ";" + text::format_double(1.0 / n)}};
  s.motion.present = true;
  s.motion.fixed = "fixed";
  s.motion.moving = "wheel";
  s.motion.steps = 240 * n;
  s.track = {start};
  s.verify.cusps = n;
  const std::string stem = "hypocycloid_n" + std::to_string(n);
  s.output.roulette_csv = stem + ".csv";
  s.output.svg = stem + ".svg";
  return s;
}

RunReport run(const Scenario& s, const RunOptions& opt) {
  RunReport report;
  const bool verify = opt.mode == RunMode::verify;
  auto enabled = [&](const char* name, bool toggle) {
    if (opt.mode == RunMode::inflection) return std::string(name) == "inflection";
    if (opt.mode == RunMode::roll) return std::string(name) == "cusps" && toggle;
    if (!opt.only.empty() && opt.only != name) return false;
    return toggle;
  };
  if (verify && !opt.only.empty()) {
    static const char* kNames[] = {"es1",   "es2",        "combined", "statement1",
                                   "laws",  "brass",      "inflection", "cusps"};
    if (std::find(std::begin(kNames), std::end(kNames), opt.only) == std::end(kNames)) {
      throw Error(ErrorCode::BadParams, "unknown check '" + opt.only + "'");
    }
  }

  std::optional<World> world;
  std::ostringstream notes;
  try {
    World w{PlaneContext::from_spec(s.ball, s.numerics.samples), {}, {}, {}, {}};
    for (const auto& [name, spec] : s.curves) w.curves.emplace(name, resolve_curve(spec, w));
    if (s.motion.present) {
      w.fixed = resolve_curve(s.motion.fixed, w);
      w.moving = resolve_curve(s.motion.moving, w);
      w.motion.emplace(*w.fixed, *w.moving, w.ctx, s.motion.steps,
                       s.motion.s_max > 0.0 ? s.motion.s_max
                                            : std::numeric_limits<double>::quiet_NaN());
    }
    world = std::move(w);
  } catch (const Error& e) {
    CheckResult c{"setup"};
    c.error = e.what();
    report.checks.push_back(c);
    report.exit_status = 1;
    return report;
  }
  const World& w = *world;

  std::vector<RouletteTrace> traces;
  if (w.motion) {
    for (Vec2 p : s.track) traces.push_back(roulette_trace(*w.motion, p, s.numerics.trace_h));
  }
  std::optional<InflectionCurve> ic;
  if (w.motion) {
    try {
      ic = inflection_curve(*w.motion, w.ctx, s.numerics.fan);
      notes << "K = " << fmt_point(ic->frame.K) << "\nL = " << fmt_point(ic->frame.L) << '\n';
    } catch (const Error& e) {
      notes << "inflection curve unavailable: " << e.what() << '\n';
    }
  }

  std::vector<std::pair<std::string, std::function<CheckResult()>>> tasks;
  const auto& v = s.verify;
  if (enabled("statement1", v.statement1)) tasks.push_back({"statement1", [&] { return check_statement1(s, w); }});
  if (enabled("es1", v.es1)) tasks.push_back({"es1", [&] { return check_es1(s, w); }});
  if (enabled("es2", v.es2)) tasks.push_back({"es2", [&] { return check_es2(s, w); }});
  if (enabled("combined", v.combined)) tasks.push_back({"combined", [&] { return check_combined(s, w); }});
  if (enabled("inflection", v.inflection)) {
    tasks.push_back({"inflection", [&]() -> CheckResult {
                       if (!ic) return check_inflection(s, w, inflection_curve(need_motion(w), w.ctx, s.numerics.fan));
                       return check_inflection(s, w, *ic);
                     }});
  }
  if (enabled("brass", v.brass)) tasks.push_back({"brass", [&] { return check_brass(s, w); }});
  if (enabled("laws", v.group_laws)) tasks.push_back({"laws", [&] { return check_laws(s, w); }});
  if (enabled("cusps", v.cusps >= 0)) tasks.push_back({"cusps", [&] { return check_cusps(s, traces); }});

  report.checks.resize(tasks.size());
  parallel_for(tasks.size(), thread_count(opt.threads), [&](std::size_t i) {
    try {
      report.checks[i] = tasks[i].second();
    } catch (const Error& e) {
      CheckResult c{tasks[i].first};
      c.error = e.what();
      report.checks[i] = c;
    }
  });

  // Outputs are written after all checks, one path at a time.
  try {
    const auto& o = s.output;
    if (!o.roulette_csv.empty()) {
      for (std::size_t i = 0; i < traces.size(); ++i) {
        const std::string path = resolve_path(indexed_path(o.roulette_csv, i, traces.size()), opt);
        write_file(path, roulette_csv(traces[i]));
        report.written.push_back(path);
      }
    }
    if (!o.inflection_csv.empty() && ic) {
      const std::string path = resolve_path(o.inflection_csv, opt);
      write_file(path, inflection_csv(*ic));
      report.written.push_back(path);
    }
    if (!o.svg.empty()) {
      std::vector<Polyline> lines;
      std::vector<Marker> marks;
      if (w.motion) {
        const RollingMotion& m = *w.motion;
        Polyline fx{"fixed_polode", "#555555", {}, false};
        Polyline mv{"moving_polode", "#999999", {}, false};
        const int n = 512;
        for (int k = 0; k <= n; ++k) {
          fx.points.push_back(m.fixed().eval(m.fixed().t0() + m.fixed().span() * k / n));
          mv.points.push_back(m.moving().eval(m.moving().t0() + m.moving().span() * k / n));
        }
        lines.push_back(fx);
        lines.push_back(mv);
        for (std::size_t i = 0; i < traces.size(); ++i) {
          Polyline r{"roulette_" + point_label(i), "#1f5fbf", {}, false};
          for (const auto& smp : traces[i].samples) r.points.push_back(smp.position);
          lines.push_back(r);
        }
      }
      if (ic) {
        Polyline a{"inflection_curve", "#c03030", {}, false};
        Polyline b{"return_curve", "#30a030", {}, false};
        for (const auto& p : ic->points) {
          const Vec2 gap{NAN, NAN};
          a.points.push_back(p.found ? p.point : gap);
          b.points.push_back(p.found ? p.ret : gap);
        }
        lines.push_back(a);
        lines.push_back(b);
        marks.push_back({"K", "black", ic->frame.K});
        marks.push_back({"L", "#c03030", ic->frame.L});
      }
      const std::string path = resolve_path(o.svg, opt);
      emit_svg(lines, marks, path);
      report.written.push_back(path);
    }
  } catch (const Error& e) {
    CheckResult c{"output"};
    c.error = e.what();
    report.checks.push_back(c);
  }

  report.notes = notes.str();
  report.exit_status = 0;
  for (const auto& c : report.checks) {
    if (!c.pass) report.exit_status = 1;
  }
  try {
    if (!s.output.report.empty()) {
      const std::string path = resolve_path(s.output.report, opt);
      write_file(path, report_text(report));
      report.written.push_back(path);
    }
    if (!s.output.report_csv.empty()) {
      const std::string path = resolve_path(s.output.report_csv, opt);
      write_file(path, report_csv(report));
      report.written.push_back(path);
    }
  } catch (const Error& e) {
    report.notes += std::string("report not written: ") + e.what() + '\n';
    report.exit_status = 1;
  }
  return report;
}

std::string report_text(const RunReport& r) {
  using text::format_sig;
  std::ostringstream os;
  os << r.notes;
  int failed = 0;
  for (const auto& c : r.checks) {
    if (!c.pass) ++failed;
    os << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.rows.empty()) os << "  max_residual=" << format_sig(c.residual) << " tol=" << format_sig(c.tolerance);
    if (!c.error.empty()) os << "  error: " << c.error;
    os << '\n';
    for (const auto& row : c.rows) {
      os << "  " << row.quantity << "  lhs=" << format_sig(row.lhs) << " rhs=" << format_sig(row.rhs)
         << " residual=" << format_sig(row.residual) << " h=" << format_sig(row.h)
         << " order=" << format_sig(row.observed_order) << '\n';
    }
  }
  os << r.checks.size() << " checks, " << failed << " failed\n";
  return os.str();
}

std::string report_csv(const RunReport& r) {
  using text::format_sig;
  std::ostringstream os;
  os << "quantity,lhs,rhs,residual,h,observed_order\n";
  for (const auto& c : r.checks) {
    for (const auto& row : c.rows) {
      os << row.quantity << ',' << format_sig(row.lhs) << ',' << format_sig(row.rhs) << ','
         << format_sig(row.residual) << ',' << format_sig(row.h) << ','
         << format_sig(row.observed_order) << '\n';
    }
  }
  return os.str();
}

}  // namespace mkin
