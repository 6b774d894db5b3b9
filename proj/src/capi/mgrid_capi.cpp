#include "mgrid/mgrid.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "mgrid/grid.hpp"
#include "mgrid/lfun.hpp"

using namespace mgrid;

struct mgrid_config {
  AutomorphyData data;
  TruncationParams trunc;
};

struct mgrid_series {
  std::vector<mgrid_entry> entries;
  int64_t c_used = 0;
};

namespace {

thread_local std::string g_last_error;

mgrid_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
      return MGRID_INVALID_ARGUMENT;
    case ErrorCode::Precondition:
      return MGRID_PRECONDITION;
    case ErrorCode::NonConvergence:
      return MGRID_NONCONVERGENCE;
    case ErrorCode::Unconverged:
      return MGRID_UNCONVERGED;
    case ErrorCode::Internal:
      return MGRID_INTERNAL;
  }
  return MGRID_INTERNAL;
}

template <class F>
mgrid_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return MGRID_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MGRID_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MGRID_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

mgrid_complex wrap(Complex z) { return {z.real(), z.imag()}; }

std::vector<GroupElement> parse_generators(const char* text) {
  std::vector<GroupElement> out;
  if (!text || !*text) return out;
  std::stringstream all(text);
  std::string tuple;
  while (std::getline(all, tuple, ';')) {
    if (tuple.find_first_not_of(" \t") == std::string::npos) continue;
    std::stringstream ts(tuple);
    std::string item;
    std::vector<int64_t> v;
    while (std::getline(ts, item, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoll(item, &used));
        require(item.find_first_not_of(" \t", used) == std::string::npos, ErrorCode::InvalidArgument,
                "bad integer '" + item + "' in generator list");
      } catch (const std::logic_error&) {
        fail(ErrorCode::InvalidArgument, "bad integer '" + item + "' in generator list");
      }
    }
    require(v.size() == 4, ErrorCode::InvalidArgument, "generators are 4-tuples a,b,c,d separated by ';'");
    out.push_back({v[0], v[1], v[2], v[3]});
  }
  return out;
}

GroupElement element(const int64_t* g) {
  need(g, "gamma");
  GroupElement e{g[0], g[1], g[2], g[3]};
  require(e.is_unimodular(), ErrorCode::InvalidArgument, "gamma " + e.to_string() + " has determinant != 1");
  return e;
}

mgrid_series* export_series(const FourierSeries& f) {
  auto s = std::make_unique<mgrid_series>();
  for (const auto& [key, c] : f.entries()) s->entries.push_back({key.l, key.j, wrap(c.value), c.tail_bound});
  s->c_used = f.c_used;
  return s.release();
}

void copy_string(const std::string& s, char* buf, std::size_t cap) {
  need(buf, "buffer");
  require(cap > s.size(), ErrorCode::InvalidArgument, "buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

// Expansion of P_n long enough for L-values at every requested twist.
FourierSeries lseries(const mgrid_config* cfg, int64_t n, std::span<const lfun::TwistSpec> twists, double tol) {
  auto build = [&](int64_t l_max) { return poincare::poincare_series(cfg->data, n, 0, 0, l_max, cfg->trunc); };
  return lfun::series_for_lvalues(build, twists, tol);
}

}  // namespace

extern "C" {

const char* mgrid_version(void) { return "1.0.0"; }

const char* mgrid_last_error(void) { return g_last_error.c_str(); }

mgrid_status mgrid_config_create(int64_t level, const char* generators, int weight, const char* character,
                                 const char* rep, mgrid_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    auto gens = parse_generators(generators);
    GroupSpec spec = GroupSpec::gamma0(level, std::move(gens));
    Multiplier chi = Multiplier::parse(character ? character : "trivial");
    Representation rho = Representation::parse(rep ? rep : "trivial");
    auto cfg = std::make_unique<mgrid_config>();
    cfg->data = AutomorphyData::make(std::move(spec), weight, std::move(chi), std::move(rho));
    *out = cfg.release();
  });
}

void mgrid_config_destroy(mgrid_config* cfg) { delete cfg; }

mgrid_status mgrid_config_set_truncation(mgrid_config* cfg, int64_t c_max, double tail_tol, int bits,
                                         int allow_slow_convergence) {
  return guarded([&] {
    need(cfg, "config");
    TruncationParams t = cfg->trunc;
    t.c_max = c_max;
    t.tail_tol = tail_tol;
    t.ctx.mantissa_bits = bits;
    t.allow_slow_convergence = allow_slow_convergence != 0;
    t.ctx.validate();
    require(c_max >= 1, ErrorCode::InvalidArgument, "c_max must be >= 1");
    require(tail_tol > 0, ErrorCode::InvalidArgument, "tail_tol must be positive");
    cfg->trunc = t;
  });
}

mgrid_status mgrid_config_dim(const mgrid_config* cfg, int* dim) {
  return guarded([&] {
    need(cfg, "config");
    need(dim, "dim");
    *dim = cfg->data.dim();
  });
}

mgrid_status mgrid_config_kappa(const mgrid_config* cfg, double* kappa) {
  return guarded([&] {
    need(cfg, "config");
    need(kappa, "kappa");
    std::copy(cfg->data.kappa.begin(), cfg->data.kappa.end(), kappa);
  });
}

mgrid_status mgrid_config_generators(const mgrid_config* cfg, size_t* count, int64_t* gens) {
  return guarded([&] {
    need(cfg, "config");
    need(count, "count");
    auto g = group::generators(cfg->data.group);
    *count = g.size();
    if (gens)
      for (std::size_t i = 0; i < g.size(); ++i) {
        gens[4 * i] = g[i].a;
        gens[4 * i + 1] = g[i].b;
        gens[4 * i + 2] = g[i].c;
        gens[4 * i + 3] = g[i].d;
      }
  });
}

mgrid_status mgrid_config_character(const mgrid_config* cfg, char* buf, size_t cap) {
  return guarded([&] {
    need(cfg, "config");
    copy_string(cfg->data.chi.to_string(), buf, cap);
  });
}

mgrid_status mgrid_config_rep(const mgrid_config* cfg, char* buf, size_t cap) {
  return guarded([&] {
    need(cfg, "config");
    copy_string(cfg->data.rho.to_string(), buf, cap);
  });
}

mgrid_status mgrid_poincare_series(const mgrid_config* cfg, int64_t n, int alpha, int64_t l_max, mgrid_series** out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "out");
    *out = nullptr;
    *out = export_series(poincare::poincare_series(cfg->data, n, alpha, 0, l_max, cfg->trunc));
  });
}

mgrid_status mgrid_harmonic_form(const mgrid_config* cfg, int64_t n2, int alpha2, int64_t l_max,
                                 mgrid_series** holomorphic, mgrid_series** nonholomorphic) {
  return guarded([&] {
    need(cfg, "config");
    need(holomorphic, "holomorphic");
    need(nonholomorphic, "nonholomorphic");
    *holomorphic = *nonholomorphic = nullptr;
    auto g = grid::build_G(cfg->data, n2, alpha2, l_max, cfg->trunc);
    std::unique_ptr<mgrid_series> h(export_series(g.holomorphic));
    *nonholomorphic = export_series(g.nonholomorphic);
    *holomorphic = h.release();
  });
}

void mgrid_series_destroy(mgrid_series* s) { delete s; }

size_t mgrid_series_size(const mgrid_series* s) { return s ? s->entries.size() : 0; }

mgrid_status mgrid_series_entry(const mgrid_series* s, size_t index, mgrid_entry* out) {
  return guarded([&] {
    need(s, "series");
    need(out, "out");
    require(index < s->entries.size(), ErrorCode::InvalidArgument, "entry index out of range");
    *out = s->entries[index];
  });
}

int64_t mgrid_series_c_used(const mgrid_series* s) { return s ? s->c_used : 0; }

int mgrid_series_converged(const mgrid_series* s, double tail_tol) {
  if (!s) return 0;
  for (const auto& e : s->entries)
    if (e.tail_bound > tail_tol * std::max(1.0, std::hypot(e.value.re, e.value.im))) return 0;
  return 1;
}

mgrid_status mgrid_duality_grid(const mgrid_config* cfg, const int64_t* n1, const int* alpha1, size_t count1,
                                const int64_t* n2, const int* alpha2, size_t count2, mgrid_duality* out) {
  return guarded([&] {
    need(cfg, "config");
    if (count1 == 0 || count2 == 0) return;
    need(n1, "n1");
    need(n2, "n2");
    need(out, "out");
    std::vector<std::pair<int64_t, int>> first, second;
    for (std::size_t i = 0; i < count1; ++i) first.emplace_back(n1[i], alpha1 ? alpha1[i] : 0);
    for (std::size_t i = 0; i < count2; ++i) second.emplace_back(n2[i], alpha2 ? alpha2[i] : 0);
    auto recs = grid::verify_duality_grid(cfg->data, first, second, cfg->trunc);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto& r = recs[i];
      out[i] = {r.n1,          r.n2,          r.alpha1,   r.alpha2,    wrap(r.lhs), wrap(r.rhs),
                r.lhs_bound,   r.rhs_bound,   r.residual, r.tolerance, r.ok ? 1 : 0};
    }
  });
}

mgrid_status mgrid_lvalues(const mgrid_config* cfg, int64_t n, const int64_t gamma[4], int s_max, double t0,
                           int method, double tol, mgrid_lvalue* out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "out");
    require(method == MGRID_METHOD_SERIES || method == MGRID_METHOD_INTEGRAL, ErrorCode::InvalidArgument,
            "unknown L-value method");
    auto tw = lfun::TwistSpec::from(element(gamma));
    double t = t0 > 0 ? t0 : tw.default_t0();
    FourierSeries f = lseries(cfg, n, std::span<const lfun::TwistSpec>(&tw, 1), tol);
    auto values = method == MGRID_METHOD_SERIES ? lfun::lvalues_series(f, tw, s_max, t, tol)
                                                : lfun::lvalues_integral(f, tw, s_max, t, tol);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto& v = values[i];
      out[i] = {v.s, method, wrap(v.value), v.t0, v.err, v.converged ? 1 : 0, v.terms};
    }
  });
}

mgrid_status mgrid_period(const mgrid_config* cfg, int64_t n, const int64_t gamma[4], int kind, double t0, double tol,
                          mgrid_complex* coeffs, double* err, int* converged) {
  return guarded([&] {
    need(cfg, "config");
    need(coeffs, "coeffs");
    GroupElement g = element(gamma);
    eichler::PeriodOptions opt;
    opt.t0 = t0;
    opt.tol = tol;
    opt.trunc = cfg->trunc;
    FourierSeries f;
    if (g.c != 0) {
      auto tw = lfun::TwistSpec::from(g);
      f = lseries(cfg, n, std::span<const lfun::TwistSpec>(&tw, 1), tol);
    } else {
      f = poincare::poincare_series(cfg->data, n, 0, 0, 32, cfg->trunc);
    }
    eichler::PeriodPolynomial p;
    switch (kind) {
      case MGRID_PERIOD_R:
        p = eichler::period_r(f, g, opt);
        break;
      case MGRID_PERIOD_RH:
        p = eichler::period_rH(f, g, opt);
        break;
      case MGRID_PERIOD_RN:
        require(g.c != 0, ErrorCode::InvalidArgument, "r^N is defined here for gamma with c != 0");
        p = eichler::period_rN(f, g, opt);
        break;
      default:
        fail(ErrorCode::InvalidArgument, "unknown period kind");
    }
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) coeffs[i] = wrap(p.coeffs[i]);
    if (err) *err = p.err;
    if (converged) *converged = p.converged ? 1 : 0;
  });
}

mgrid_status mgrid_pairing(const mgrid_config* cfg, const int64_t* n, size_t count, double tol, mgrid_gram* out,
                           mgrid_pairing_info* info) {
  return guarded([&] {
    need(cfg, "config");
    need(n, "n");
    need(out, "out");
    require(count >= 1, ErrorCode::InvalidArgument, "pairing needs at least one index");
    const auto& data = cfg->data;
    eichler::PeriodOptions opt;
    opt.tol = tol;
    opt.trunc = cfg->trunc;
    auto gens = group::generators(data.group);
    std::vector<lfun::PeriodFeatures> feats;
    std::vector<FourierSeries> series;
    int64_t l_need = 0;
    for (std::size_t i = 0; i < count; ++i) l_need = std::max(l_need, -n[i]);
    for (std::size_t i = 0; i < count; ++i) {
      feats.push_back(lfun::period_features(data, n[i], gens, opt));
      series.push_back(poincare::poincare_series(data, n[i], 0, 0, l_need, cfg->trunc));
    }
    auto reference = [&](std::size_t i, std::size_t j) { return lfun::petersson_poincare(series[i], n[j], 0); };
    std::vector<lfun::GramEntry> training{{0, 0, reference(0, 0)}};
    auto pm = lfun::fit_pairing(feats, training, data.weight - 2);
    auto pc = lfun::pairing_constants(pm, data);
    const double nu = lfun::gram_normalization(data);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < count; ++j) {
        Complex pred = lfun::predict_gram(pm, feats[i], feats[j]);
        Complex ref = reference(i, j);
        Complex cons = lfun::gram_from_constants(pc, feats[i], feats[j]) / nu;
        out[i * count + j] = {n[i],
                              n[j],
                              wrap(pred),
                              wrap(cons),
                              wrap(ref),
                              std::abs(pred - ref) / std::max(std::abs(ref), 1e-300),
                              feats[i].err + feats[j].err,
                              i == 0 && j == 0 ? 1 : 0};
      }
    if (info) *info = {pm.rank, pm.residual, pm.rank_deficient ? 1 : 0};
  });
}

}  // extern "C"
