#include "corrsep/corrsep.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "corrsep/criteria.hpp"
#include "corrsep/error.hpp"
#include "corrsep/filtering.hpp"
#include "corrsep/serialization.hpp"
#include "corrsep/witnesses.hpp"

struct cs_state {
  corrsep::DensityMatrix rho;
};

struct cs_witness {
  corrsep::Witness w;
};

namespace {

using namespace corrsep;

thread_local std::string g_last_error;

cs_status code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return CS_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return CS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::Domain: return CS_ERR_DOMAIN;
    case ErrorCode::NumericalFailure: return CS_ERR_NUMERICAL;
    case ErrorCode::Unsupported: return CS_ERR_UNSUPPORTED;
    case ErrorCode::Parse: return CS_ERR_PARSE;
    case ErrorCode::NotConverged: return CS_ERR_NOT_CONVERGED;
    case ErrorCode::RankDeficient: return CS_ERR_RANK_DEFICIENT;
  }
  return CS_ERR_INTERNAL;
}

template <typename F>
cs_status guarded(F&& body) {
  try {
    body();
    return CS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CS_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Dims dims_from(const int* dims, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one dimension");
  require(dims, "dims");
  return Dims(dims, dims + n);
}

void emit(cs_state** out, DensityMatrix rho) {
  require(out, "out");
  *out = new cs_state{std::move(rho)};
}

void fill(const CriterionReport& r, cs_report* out) {
  require(out, "out");
  *out = cs_report{};
  std::strncpy(out->criterion, to_string(r.criterion).c_str(), sizeof out->criterion - 1);
  out->n_params = static_cast<int>(std::min<std::size_t>(r.params.size(), 8));
  for (int k = 0; k < out->n_params; ++k) out->params[k] = r.params[static_cast<std::size_t>(k)];
  out->lhs = r.lhs;
  out->rhs = r.rhs;
  out->gap = r.gap;
  out->detected = r.detected ? 1 : 0;
}

CriterionSpec spec_of(cs_criterion c, double x, double y) {
  switch (c) {
    case CS_CRIT_DV: return CriterionSpec::named(NamedCriterion::DeVicente);
    case CS_CRIT_CCNR: return CriterionSpec::named(NamedCriterion::Ccnr);
    case CS_CRIT_ESIC: return CriterionSpec::named(NamedCriterion::Esic);
    case CS_CRIT_FEI: return CriterionSpec::named(NamedCriterion::Fei);
    case CS_CRIT_POINT: return CriterionSpec::point(x, y);
    case CS_CRIT_PPT: return CriterionSpec::ppt();
    case CS_CRIT_FILTERED_DV: return CriterionSpec::filtered_dv();
  }
  throw Error(ErrorCode::InvalidArgument, "unknown criterion");
}

UpbKind upb_kind(const char* kind) {
  require(kind, "kind");
  const std::string k = kind;
  if (k == "pp" || k == "pyramid") return UpbKind::Pyramid;
  if (k == "tiles" || k == "ti") return UpbKind::Tiles;
  throw Error(ErrorCode::InvalidArgument, "unknown UPB kind '" + k + "' (expected pp or tiles)");
}

DensityMatrix chessboard_reference() {
  return chessboard_state(ChessboardParams::reference());
}

}  // namespace

extern "C" {

const char* cs_last_error(void) { return g_last_error.c_str(); }

const char* cs_status_name(cs_status status) {
  switch (status) {
    case CS_OK: return "ok";
    case CS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CS_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case CS_ERR_DOMAIN: return "domain error";
    case CS_ERR_NUMERICAL: return "numerical failure";
    case CS_ERR_UNSUPPORTED: return "unsupported";
    case CS_ERR_PARSE: return "parse error";
    case CS_ERR_NOT_CONVERGED: return "not converged";
    case CS_ERR_RANK_DEFICIENT: return "rank deficient";
    case CS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void cs_string_free(char* s) { std::free(s); }

cs_status cs_state_from_json(const char* text, int rounded, cs_state** out) {
  return guarded([&] {
    require(text, "text");
    emit(out, state_from_json(parse_json(text), rounded != 0));
  });
}

cs_status cs_state_to_json(const cs_state* s, char** out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    *out = copy_string(state_to_json(s->rho).dump());
  });
}

cs_status cs_state_from_matrix(const int* dims, int n_dims, const double* re, const double* im,
                               cs_state** out) {
  return guarded([&] {
    const Dims d = dims_from(dims, n_dims);
    require(re, "re");
    const int n = product(d);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        m(i, k) = Complex(re[i * n + k], im != nullptr ? im[i * n + k] : 0.0);
      }
    }
    emit(out, DensityMatrix(d, m));
  });
}

cs_status cs_state_dims(const cs_state* s, int* dims, int capacity, int* n_dims) {
  return guarded([&] {
    require(s, "state");
    require(n_dims, "n_dims");
    const Dims& d = s->rho.dims();
    *n_dims = static_cast<int>(d.size());
    if (capacity < *n_dims) throw Error(ErrorCode::InvalidArgument, "dims buffer too small");
    require(dims, "dims");
    for (std::size_t k = 0; k < d.size(); ++k) dims[k] = d[k];
  });
}

cs_status cs_state_rudolph(double r, double s, double t, cs_state** out) {
  return guarded([&] { emit(out, rudolph_state(r, s, t)); });
}

cs_status cs_state_chessboard(double p, cs_state** out) {
  return guarded([&] { emit(out, mix_with_white_noise(chessboard_reference(), p)); });
}

cs_status cs_state_upb(const char* kind, double p, cs_state** out) {
  return guarded([&] { emit(out, mix_with_white_noise(upb_state(upb_kind(kind)), p)); });
}

cs_status cs_state_bell(cs_state** out) {
  return guarded([&] { emit(out, bell_state()); });
}

cs_status cs_state_ghz(int n, cs_state** out) {
  return guarded([&] { emit(out, ghz_state(n)); });
}

cs_status cs_state_w(int n, cs_state** out) {
  return guarded([&] { emit(out, w_state(n)); });
}

cs_status cs_state_maximally_mixed(const int* dims, int n_dims, cs_state** out) {
  return guarded([&] { emit(out, maximally_mixed(dims_from(dims, n_dims))); });
}

cs_status cs_state_random_product(const int* dims, int n_dims, uint64_t seed, cs_state** out) {
  return guarded([&] { emit(out, random_product_state(dims_from(dims, n_dims), seed)); });
}

cs_status cs_state_random_separable(const int* dims, int n_dims, int terms, uint64_t seed,
                                    cs_state** out) {
  return guarded(
      [&] { emit(out, random_separable_state(dims_from(dims, n_dims), terms, seed)); });
}

cs_status cs_state_mix_noise(const cs_state* s, double p, cs_state** out) {
  return guarded([&] {
    require(s, "state");
    emit(out, mix_with_white_noise(s->rho, p));
  });
}

void cs_state_destroy(cs_state* s) { delete s; }

cs_status cs_detect(const cs_state* s, cs_criterion criterion, double x, double y,
                    cs_report* out) {
  return guarded([&] {
    require(s, "state");
    fill(make_evaluator(spec_of(criterion, x, y))(s->rho), out);
  });
}

cs_status cs_family_gap(const cs_state* s, double x, double y, cs_report* out) {
  return guarded([&] {
    require(s, "state");
    fill(family_gap(s->rho, x, y), out);
  });
}

cs_status cs_ppt(const cs_state* s, cs_report* out) {
  return guarded([&] {
    require(s, "state");
    fill(ppt_check(s->rho), out);
  });
}

cs_status cs_esic_direct(const cs_state* s, cs_report* out) {
  return guarded([&] {
    require(s, "state");
    if (s->rho.parties() != 2) {
      throw Error(ErrorCode::DimensionMismatch, "esic: state is not bipartite");
    }
    fill(esic_direct(s->rho, sic_povm(s->rho.dims()[0]), sic_povm(s->rho.dims()[1])).report,
         out);
  });
}

cs_status cs_multipartite(const cs_state* s, const double* xs, int n,
                          cs_multipartite_method method, cs_report* out) {
  return guarded([&] {
    require(s, "state");
    require(xs, "xs");
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative scaling count");
    const MultipartiteMethod m = method == CS_MULTI_KY_FAN ? MultipartiteMethod::KyFan
                                                           : MultipartiteMethod::NuclearLowerBound;
    fill(multipartite_gap(s->rho, ScalingVector(std::vector<double>(xs, xs + n)), m), out);
  });
}

cs_status cs_optimize_xy(const cs_state* s, double* x, double* y, double* gap) {
  return guarded([&] {
    require(s, "state");
    require(x, "x");
    require(y, "y");
    require(gap, "gap");
    const XYOptimum o = optimize_xy(s->rho);
    *x = o.x;
    *y = o.y;
    *gap = o.gap;
  });
}

cs_status cs_scan(const cs_state* s, const double* xs, int nx, const double* ys, int ny,
                  double* gaps) {
  return guarded([&] {
    require(s, "state");
    require(xs, "xs");
    require(ys, "ys");
    require(gaps, "gaps");
    if (nx < 1 || ny < 1) throw Error(ErrorCode::InvalidArgument, "empty scan grid");
    if (s->rho.parties() != 2) {
      throw Error(ErrorCode::DimensionMismatch, "scan: state is not bipartite");
    }
    const CorrelationTensor c = canonical_correlation(s->rho);
    for (int i = 0; i < nx; ++i) {
      for (int k = 0; k < ny; ++k) gaps[i * ny + k] = family_gap(c, xs[i], ys[k]).gap;
    }
  });
}

cs_status cs_threshold(const char* family, cs_criterion criterion, double x, double y,
                       double tolerance, double* p_star, int* detected) {
  return guarded([&] {
    require(family, "family");
    require(p_star, "p_star");
    require(detected, "detected");
    const std::string name = family;
    StateFamily fam;
    if (name == "chessboard") {
      fam = noisy_family(chessboard_reference(), name);
    } else {
      fam = noisy_family(upb_state(upb_kind(family)), name);
    }
    const ThresholdResult r =
        threshold_scan(fam, make_evaluator(spec_of(criterion, x, y)), ThresholdOptions{tolerance});
    *p_star = r.p_star;
    *detected = r.detected ? 1 : 0;
  });
}

cs_status cs_witness_build(const cs_state* s, double x, double y, cs_witness** out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    *out = new cs_witness{build_witness(s->rho, x, y)};
  });
}

cs_status cs_witness_expectation(const cs_witness* w, const cs_state* s, double* out) {
  return guarded([&] {
    require(w, "witness");
    require(s, "state");
    require(out, "out");
    *out = witness_expectation(w->w, s->rho);
  });
}

cs_status cs_witness_to_json(const cs_witness* w, char** out) {
  return guarded([&] {
    require(w, "witness");
    require(out, "out");
    *out = copy_string(witness_to_json(w->w).dump());
  });
}

cs_status cs_witness_from_json(const char* text, cs_witness** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new cs_witness{witness_from_json(parse_json(text))};
  });
}

void cs_witness_destroy(cs_witness* w) { delete w; }

cs_status cs_filter(const cs_state* s, char** out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    *out = copy_string(filter_to_json(local_filter_normal_form(s->rho)).dump());
  });
}

cs_status cs_validate_basis(const char* kind, int d, char** out) {
  return guarded([&] {
    require(kind, "kind");
    require(out, "out");
    const std::string k = kind;
    OperatorBasis basis;
    if (k == "canonical") {
      basis = canonical_basis(d);
    } else if (k == "sic_minus") {
      basis = sic_basis(d, SicSign::Minus);
    } else if (k == "sic_plus") {
      basis = sic_basis(d, SicSign::Plus);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown basis kind '" + k + "'");
    }
    Json j = basis_validation_to_json(validate_basis(basis), k);
    j["dim"] = d;
    *out = copy_string(j.dump());
  });
}

}  // extern "C"
