#pragma once

#include <string>

#include <json.hpp>

#include "corrsep/criteria.hpp"
#include "corrsep/filtering.hpp"
#include "corrsep/operator_bases.hpp"
#include "corrsep/states.hpp"
#include "corrsep/witnesses.hpp"

namespace corrsep {

using Json = nlohmann::json;

/// {"dims": [..], "re": [[..]], "im": [[..]]}, full square matrix, row-major.
Json state_to_json(const DensityMatrix& rho);

/// Throws Parse on structural problems and Domain when the matrix is not a
/// valid density matrix. `rounded` selects the looser tolerances used for
/// matrices printed to a few decimals.
DensityMatrix state_from_json(const Json& j, bool rounded = false);

/// {"dims": [dA, dB], "x", "y", "coeffs", "isometry", "operator": {"re", "im"}}
Json witness_to_json(const Witness& w);

/// Rebuilds the operator from the coefficients and checks it against the
/// stored one (Parse error on a mismatch above 1e-9).
Witness witness_from_json(const Json& j);

Json report_to_json(const CriterionReport& r);

/// {"A": {re, im}, "B": {re, im}, "state": <state>, "residual", "iterations", "converged"}
Json filter_to_json(const FilterResult& f);

Json basis_validation_to_json(const BasisValidation& v, const std::string& label);

/// Parses text, mapping syntax errors to Error(Parse).
Json parse_json(const std::string& text);

}  // namespace corrsep
