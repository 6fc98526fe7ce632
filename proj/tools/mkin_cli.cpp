// Command-line front end. Talks to the library only through mkin.h.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mkin/mkin.h"

namespace {

constexpr int kExitUsage = 2;

std::string fetch(int (*get)(const mkin_report*, char*, size_t, size_t*), const mkin_report* r) {
  size_t n = 0;
  get(r, nullptr, 0, &n);
  std::string s(n + 1, '\0');
  get(r, s.data(), s.size(), &n);
  s.resize(n);
  return s;
}

int report_error(int status) {
  std::fprintf(stderr, "mkin: %s\n", mkin_last_error());
  return status == MKIN_PARSE_ERROR || status == MKIN_UNKNOWN_KEY ||
                 status == MKIN_UNRESOLVED_NAME || status == MKIN_BAD_PARAMS ||
                 status == MKIN_IO_ERROR || status == MKIN_INVALID_BALL
             ? kExitUsage
             : 1;
}

int run_scenario(mkin_scenario* s, int mode, const std::string& only, int threads,
                 const std::string& out_dir) {
  mkin_run_options opt{mode, only.empty() ? nullptr : only.c_str(), threads,
                       out_dir.empty() ? nullptr : out_dir.c_str()};
  mkin_report* r = nullptr;
  const int st = mkin_run(s, &opt, &r);
  mkin_scenario_destroy(s);
  if (st != MKIN_OK) return report_error(st);
  std::fputs(fetch(mkin_report_text, r).c_str(), stdout);
  const int code = mkin_report_exit_status(r);
  mkin_report_destroy(r);
  return code;
}

int load_and_run(const std::string& path, int mode, const std::string& only, int threads,
                 const std::string& out_dir) {
  mkin_scenario* s = nullptr;
  const int st = mkin_scenario_load(path.c_str(), &s);
  if (st != MKIN_OK) {
    std::fprintf(stderr, "mkin: %s: %s\n", path.c_str(), mkin_last_error());
    return kExitUsage;
  }
  return run_scenario(s, mode, only, threads, out_dir);
}

std::string sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

int norm_info(const std::string& ball) {
  mkin_ctx* ctx = nullptr;
  int st = mkin_ctx_create(ball.c_str(), &ctx);
  if (st != MKIN_OK) return report_error(st);
  mkin_norm_info info{};
  mkin_ctx_info(ctx, &info);
  static const char* kinds[] = {"euclidean", "lp", "polygon", "radial"};
  double sx = 0, sy = 0;
  mkin_ctx_sigma_line(ctx, 1, 0, &sx);
  mkin_ctx_sigma_line(ctx, 0, 1, &sy);
  std::printf("ball: %s\nkind: %s\nsmooth: %s\nstrictly_convex: %s\n", ball.c_str(),
              kinds[info.kind], info.smooth ? "yes" : "no", info.strictly_convex ? "yes" : "no");
  std::printf("circumference: %s\narea: %s\nsigma_plane: %s\nsigma_x: %s\nsigma_y: %s\n",
              sig(info.circumference).c_str(), sig(info.area).c_str(),
              sig(info.sigma_plane).c_str(), sig(sx).c_str(), sig(sy).c_str());
  mkin_ctx_destroy(ctx);
  return 0;
}

int rotate(const std::string& ball, const std::string& measure, const std::string& theta_spec,
           const std::vector<double>& point) {
  double theta = 0.0;
  if (theta_spec.find('=') != std::string::npos) {
    const int st = mkin_parse_angle(theta_spec.c_str(), &theta);
    if (st != MKIN_OK) return report_error(st);
  } else {
    try {
      std::size_t used = 0;
      theta = std::stod(theta_spec, &used);
      if (used != theta_spec.size()) throw std::invalid_argument(theta_spec);
    } catch (const std::exception&) {
      std::fprintf(stderr, "mkin: bad angle '%s'\n", theta_spec.c_str());
      return kExitUsage;
    }
  }
  mkin_ctx* ctx = nullptr;
  int st = mkin_ctx_create(ball.c_str(), &ctx);
  if (st != MKIN_OK) return report_error(st);
  double x = 0, y = 0;
  st = mkin_rotate(ctx, measure.c_str(), theta, point[0], point[1], &x, &y);
  mkin_ctx_destroy(ctx);
  if (st != MKIN_OK) return report_error(st);
  std::printf("%s %s\n", sig(x).c_str(), sig(y).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinematics in normed planes: rolling motions, roulettes and Euler-Savary checks"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: MKIN_THREADS or all cores)");

  std::string ball, measure, theta, scenario, only, out_dir;
  std::vector<double> point;
  int n = 3;

  auto* info = app.add_subcommand("norm-info", "properties of a unit ball");
  info->add_option("ball", ball, "euclidean | lp:<p> | polygon:<file> | radial:<file>")->required();

  auto* rot = app.add_subcommand("rotate", "general rotation of a point about the origin");
  rot->add_option("ball", ball)->required();
  rot->add_option("measure", measure, "arclen | area | density:<file>")->required();
  rot->add_option("--theta", theta, "radians, theta=<rad> or deg=<deg>")->required();
  rot->add_option("--point", point, "x,y")->required()->expected(2)->delimiter(',');

  auto* roll = app.add_subcommand("roll", "trace the roulettes of a scenario");
  auto* infl = app.add_subcommand("inflection", "inflection curve of a scenario motion");
  auto* ver = app.add_subcommand("verify", "run the enabled checks of a scenario");
  for (auto* sc : {roll, infl, ver}) {
    sc->add_option("scenario", scenario, "scenario file")->required();
    sc->add_option("--out-dir", out_dir, "directory for relative output paths");
  }
  ver->add_option("--only", only, "single check")
      ->check(CLI::IsMember({"es1", "es2", "combined", "statement1", "laws", "brass", "inflection", "cusps"}));

  auto* demo = app.add_subcommand("demo", "built-in demonstrations");
  demo->require_subcommand(1);
  auto* hypo = demo->add_subcommand("hypocycloid", "n-cusped hypocycloid");
  hypo->add_option("--n", n, "number of cusps")->check(CLI::Range(2, 64));
  hypo->add_option("--ball", ball, "ball spec (default euclidean)");
  hypo->add_option("--out-dir", out_dir, "directory for the CSV and SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*info) return norm_info(ball);
  if (*rot) return rotate(ball, measure, theta, point);
  if (*roll) return load_and_run(scenario, MKIN_MODE_ROLL, "", threads, out_dir);
  if (*infl) return load_and_run(scenario, MKIN_MODE_INFLECTION, "", threads, out_dir);
  if (*ver) return load_and_run(scenario, MKIN_MODE_VERIFY, only, threads, out_dir);
  if (*hypo) {
    mkin_scenario* s = nullptr;
    const int st = mkin_scenario_hypocycloid(n, ball.empty() ? "euclidean" : ball.c_str(), &s);
    if (st != MKIN_OK) return report_error(st);
    return run_scenario(s, MKIN_MODE_ROLL, "", threads, out_dir);
  }
  return kExitUsage;
}
