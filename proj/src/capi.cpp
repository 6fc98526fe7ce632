#include "mkin/mkin.h"

#include <algorithm>
#include <cstring>
#include <string>

#include "mkin/angle.hpp"
#include "mkin/error.hpp"
#include "mkin/plane.hpp"
#include "mkin/scenario.hpp"

struct mkin_ctx {
  mkin::PlaneContext ctx;
};
struct mkin_scenario {
  mkin::Scenario s;
};
struct mkin_report {
  mkin::RunReport r;
  std::string text, csv;
};

namespace {

thread_local std::string g_error;
thread_local int g_line = 0, g_col = 0;

static_assert(static_cast<int>(mkin::ErrorCode::IoError) + 1 == MKIN_IO_ERROR,
              "status codes must follow ErrorCode");

int status_of(mkin::ErrorCode c) { return static_cast<int>(c) + 1; }

template <class F>
int guarded(F&& f) {
  g_error.clear();
  try {
    f();
    return MKIN_OK;
  } catch (const mkin::ParseError& e) {
    g_error = e.what();
    g_line = e.line();
    g_col = e.column();
    return status_of(e.code());
  } catch (const mkin::Error& e) {
    g_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_error = e.what();
    return MKIN_INTERNAL;
  }
}

int null_arg(const char* what) {
  g_error = std::string("null argument: ") + what;
  return MKIN_INVALID_ARGUMENT;
}

int copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size();
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  return MKIN_OK;
}

}  // namespace

extern "C" {

const char* mkin_last_error(void) { return g_error.c_str(); }

const char* mkin_status_name(int status) {
  if (status == MKIN_OK) return "Ok";
  if (status == MKIN_INVALID_ARGUMENT) return "InvalidArgument";
  if (status == MKIN_INTERNAL) return "Internal";
  if (status > 0 && status < MKIN_INVALID_ARGUMENT) {
    return mkin::to_string(static_cast<mkin::ErrorCode>(status - 1)).data();
  }
  return "Unknown";
}

int mkin_ctx_create(const char* ball_spec, mkin_ctx** out) {
  if (!ball_spec) return null_arg("ball_spec");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mkin_ctx{mkin::PlaneContext::from_spec(ball_spec)}; });
}

void mkin_ctx_destroy(mkin_ctx* ctx) { delete ctx; }

int mkin_ctx_info(const mkin_ctx* ctx, mkin_norm_info* out) {
  if (!ctx || !out) return null_arg("ctx/out");
  return guarded([&] {
    out->kind = static_cast<int>(ctx->ctx.kind());
    out->smooth = ctx->ctx.smooth();
    out->strictly_convex = ctx->ctx.strictly_convex();
    out->circumference = ctx->ctx.circumference();
    out->area = ctx->ctx.area();
    out->sigma_plane = ctx->ctx.sigma_plane();
  });
}

int mkin_ctx_norm(const mkin_ctx* ctx, double x, double y, double* out) {
  if (!ctx || !out) return null_arg("ctx/out");
  return guarded([&] { *out = ctx->ctx.norm({x, y}); });
}

int mkin_ctx_sigma_line(const mkin_ctx* ctx, double x, double y, double* out) {
  if (!ctx || !out) return null_arg("ctx/out");
  return guarded([&] {
    if (x == 0.0 && y == 0.0) throw mkin::Error(mkin::ErrorCode::ZeroVector, "direction is zero");
    *out = ctx->ctx.sigma_line({x, y});
  });
}

int mkin_rotate(const mkin_ctx* ctx, const char* measure_spec, double theta, double x, double y,
                double* out_x, double* out_y) {
  if (!ctx || !measure_spec || !out_x || !out_y) return null_arg("ctx/measure/out");
  return guarded([&] {
    const mkin::StarlikeCurve carrier(mkin::curves::unit_circle(ctx->ctx), {0.0, 0.0});
    const auto m = mkin::AngleMeasure::from_spec(measure_spec, carrier, ctx->ctx);
    const mkin::Vec2 r = mkin::GeneralRotation(m, theta).apply({x, y});
    *out_x = r.x;
    *out_y = r.y;
  });
}

int mkin_parse_angle(const char* spec, double* out) {
  if (!spec || !out) return null_arg("spec/out");
  return guarded([&] { *out = mkin::parse_rotation_angle(spec); });
}

int mkin_scenario_parse(const char* text, mkin_scenario** out) {
  if (!text || !out) return null_arg("text/out");
  g_line = g_col = 0;
  return guarded([&] { *out = new mkin_scenario{mkin::parse_scenario(text)}; });
}

int mkin_scenario_load(const char* path, mkin_scenario** out) {
  if (!path || !out) return null_arg("path/out");
  g_line = g_col = 0;
  return guarded([&] { *out = new mkin_scenario{mkin::load_scenario(path)}; });
}

int mkin_scenario_hypocycloid(int n, const char* ball_spec, mkin_scenario** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new mkin_scenario{mkin::hypocycloid_scenario(n, ball_spec ? ball_spec : "euclidean")};
  });
}

void mkin_scenario_destroy(mkin_scenario* s) { delete s; }

int mkin_scenario_print(const mkin_scenario* s, char* buf, size_t cap, size_t* needed) {
  if (!s) return null_arg("scenario");
  return copy_out(mkin::print_scenario(s->s), buf, cap, needed);
}

int mkin_last_parse_location(int* line, int* column) {
  if (line) *line = g_line;
  if (column) *column = g_col;
  return MKIN_OK;
}

int mkin_run(const mkin_scenario* s, const mkin_run_options* opt, mkin_report** out) {
  if (!s || !out) return null_arg("scenario/out");
  return guarded([&] {
    mkin::RunOptions o;
    if (opt) {
      if (opt->mode < MKIN_MODE_ROLL || opt->mode > MKIN_MODE_VERIFY) {
        throw mkin::Error(mkin::ErrorCode::BadParams, "unknown run mode");
      }
      o.mode = static_cast<mkin::RunMode>(opt->mode);
      if (opt->only) o.only = opt->only;
      o.threads = opt->threads;
      if (opt->out_dir) o.out_dir = opt->out_dir;
    }
    auto* r = new mkin_report{mkin::run(s->s, o), {}, {}};
    r->text = mkin::report_text(r->r);
    r->csv = mkin::report_csv(r->r);
    *out = r;
  });
}

void mkin_report_destroy(mkin_report* r) { delete r; }

int mkin_report_exit_status(const mkin_report* r) { return r ? r->r.exit_status : 1; }

size_t mkin_report_check_count(const mkin_report* r) { return r ? r->r.checks.size() : 0; }

int mkin_report_check(const mkin_report* r, size_t i, mkin_check_info* out) {
  if (!r || !out) return null_arg("report/out");
  if (i >= r->r.checks.size()) {
    g_error = "check index out of range";
    return MKIN_BAD_PARAMS;
  }
  const auto& c = r->r.checks[i];
  out->name = c.name.c_str();
  out->error = c.error.c_str();
  out->pass = c.pass;
  out->residual = c.residual;
  out->tolerance = c.tolerance;
  out->rows = c.rows.size();
  return MKIN_OK;
}

int mkin_report_text(const mkin_report* r, char* buf, size_t cap, size_t* needed) {
  if (!r) return null_arg("report");
  return copy_out(r->text, buf, cap, needed);
}

int mkin_report_csv(const mkin_report* r, char* buf, size_t cap, size_t* needed) {
  if (!r) return null_arg("report");
  return copy_out(r->csv, buf, cap, needed);
}

}  // extern "C"
