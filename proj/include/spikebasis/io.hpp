#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spikebasis/analytic.hpp"
#include "spikebasis/bases.hpp"
#include "spikebasis/bestbasis.hpp"
#include "spikebasis/costs.hpp"
#include "spikebasis/dictionary.hpp"
#include "spikebasis/processes.hpp"

namespace spikebasis::io {

using nlohmann::json;

/// Rounds to 12 significant digits, so JSON output is stable and diffable.
double round_sig(double v);
/// Decimal text with 12 significant digits.
std::string format_number(double v);

json matrix_json(const Eigen::MatrixXd& m);  ///< row-major nested arrays

json to_json(const Basis& basis);
json to_json(const Dataset& data);
json to_json(const DictionaryTable& table);
json to_json(const TreeBasis& selection);
json to_json(const BestBasisResult& result);
json covariance_json(int n);
json cost_report(const CostValue& cost, const Provenance& basis_provenance, Index n, Index samples,
                 const json& estimator_params = json::object());

/// One sample per row, comma-separated.
void write_dataset_csv(std::ostream& out, const Dataset& data);
/// Reads the layout written by write_dataset_csv; blank lines and lines
/// starting with '#' are skipped.
Dataset read_dataset_csv(std::istream& in);

/// "# <function> step=<step>" followed by "x,value" rows.
void write_curve_csv(std::ostream& out, std::string_view function,
                     const std::vector<analytic::CurvePoint>& points);

}  // namespace spikebasis::io
