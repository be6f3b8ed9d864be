#include "corrsep/serialization.hpp"

#include "corrsep/error.hpp"

namespace corrsep {
namespace {

template <typename M>
Json rows_of(const M& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    out.push_back(std::move(row));
  }
  return out;
}

Json complex_to_json(const ComplexMatrix& m) {
  return Json{{"re", rows_of(m.real())}, {"im", rows_of(m.imag())}};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::Parse, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::Parse, std::string(what) + " is not a number");
  return j.get<double>();
}

RealMatrix real_rows(const Json& j, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw Error(ErrorCode::Parse, std::string(what) + ": expected " + std::to_string(rows) + " rows");
  }
  RealMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::Parse, std::string(what) + ": row " + std::to_string(i) +
                                        " does not have " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = number(row[static_cast<std::size_t>(k)], what);
  }
  return m;
}

ComplexMatrix complex_rows(const Json& j, Eigen::Index n) {
  const RealMatrix re = real_rows(field(j, "re"), n, n, "re");
  const RealMatrix im = j.contains("im") ? real_rows(j.at("im"), n, n, "im") : RealMatrix::Zero(n, n);
  ComplexMatrix m(n, n);
  m.real() = re;
  m.imag() = im;
  return m;
}

Dims dims_of(const Json& j) {
  const Json& d = field(j, "dims");
  if (!d.is_array() || d.empty()) throw Error(ErrorCode::Parse, "dims must be a non-empty array");
  Dims dims;
  for (const Json& v : d) {
    if (!v.is_number_integer() || v.get<int>() < 1) {
      throw Error(ErrorCode::Parse, "dims must contain positive integers");
    }
    dims.push_back(v.get<int>());
  }
  return dims;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
}

Json state_to_json(const DensityMatrix& rho) {
  Json j = complex_to_json(rho.matrix());
  j["dims"] = rho.dims();
  return j;
}

DensityMatrix state_from_json(const Json& j, bool rounded) {
  const Dims dims = dims_of(j);
  const ComplexMatrix m = complex_rows(j, product(dims));
  return DensityMatrix(dims, m, rounded ? StateTolerances::rounded() : StateTolerances{});
}

Json witness_to_json(const Witness& w) {
  return Json{{"dims", {w.dA, w.dB}},
              {"x", w.x},
              {"y", w.y},
              {"coeffs", rows_of(w.coeffs)},
              {"isometry", rows_of(w.isometry)},
              {"operator", complex_to_json(w.op)}};
}

Witness witness_from_json(const Json& j) {
  const Dims dims = dims_of(j);
  if (dims.size() != 2) throw Error(ErrorCode::Parse, "witness dims must have two entries");
  const int dA = dims[0];
  const int dB = dims[1];
  const double x = number(field(j, "x"), "x");
  const double y = number(field(j, "y"), "y");
  RealMatrix coeffs = real_rows(field(j, "coeffs"), dA * dA, dB * dB, "coeffs");
  RealMatrix iso = real_rows(field(j, "isometry"), dA * dA, dB * dB, "isometry");
  Witness w = witness_from_coefficients(dA, dB, x, y, std::move(coeffs), std::move(iso));
  if (j.contains("operator")) {
    const ComplexMatrix stored = complex_rows(j.at("operator"), dA * dB);
    if ((stored - w.op).cwiseAbs().maxCoeff() > 1e-9) {
      throw Error(ErrorCode::Parse, "witness operator does not match its coefficients");
    }
    w.op = stored;
  }
  return w;
}

Json report_to_json(const CriterionReport& r) {
  return Json{{"criterion", to_string(r.criterion)},
              {"params", r.params},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"gap", r.gap},
              {"detected", r.detected}};
}

Json filter_to_json(const FilterResult& f) {
  return Json{{"A", complex_to_json(f.A)},
              {"B", complex_to_json(f.B)},
              {"state", state_to_json(f.filtered)},
              {"residual", f.residual},
              {"iterations", f.iterations},
              {"converged", f.converged}};
}

Json basis_validation_to_json(const BasisValidation& v, const std::string& label) {
  return Json{{"basis", label},
              {"structural_ok", v.structural_ok},
              {"orthonormality_defect", v.orthonormality_defect},
              {"hermiticity_defect", v.hermiticity_defect},
              {"message", v.message}};
}

}  // namespace corrsep
