#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "da2/evaluate.hpp"
#include "da2/scoring.hpp"
#include "da2/splitting.hpp"

namespace da2 {

using json = nlohmann::json;

inline json to_json(const HalfspaceSelection& sel) {
  return json{{"indices", sel.indices},
              {"scores", sel.scores},
              {"sigma", sel.sigma},
              {"u", sel.u}};
}

inline json to_json(const Ball& b) {
  return json{{"center", std::vector<double>(b.center.begin(), b.center.end())},
              {"radius", b.radius},
              {"mean", std::vector<double>(b.mean.begin(), b.mean.end())},
              {"sigma", b.sigma},
              {"members", b.members},
              {"density", b.density}};
}

inline json to_json(const ConstraintReport& r) {
  return json{{"volume_each", r.volume_each},
              {"volume_sum", r.volume_sum},
              {"radius_each", r.radius_each},
              {"center_distance", r.center_distance},
              {"all", r.all()}};
}

inline json to_json(const BallPartition& p) {
  json balls = json::array();
  for (const Ball& b : p.balls) balls.push_back(to_json(b));
  return json{{"balls", balls},
              {"objective", p.objective},
              {"enclosing", to_json(p.enclosing)},
              {"eps", p.eps},
              {"constraints", to_json(p.report)},
              {"validation_warning", p.validation_warning}};
}

inline json to_json(const QuerySet& q) {
  return json{{"indices", q.indices}, {"method", q.method}, {"budget", q.budget}};
}

inline void write_curve_csv_header(std::ostream& out, bool with_best = false) {
  out << "method,budget,mean_error,std_error,trials";
  if (with_best) out << ",best_error";
  out << '\n';
}

inline void write_curve_csv_rows(const ErrorCurve& c, std::ostream& out,
                                 bool with_best = false) {
  out.precision(17);
  for (std::size_t i = 0; i < c.budgets.size(); ++i) {
    out << c.method << ',' << c.budgets[i] << ',' << c.mean_error[i] << ','
        << c.std_error[i] << ',' << c.trials;
    if (with_best) out << ',' << c.best_error[i];
    out << '\n';
  }
}

inline void write_curves_csv(const std::vector<ErrorCurve>& curves,
                             std::ostream& out, bool with_best = false) {
  write_curve_csv_header(out, with_best);
  for (const ErrorCurve& c : curves) write_curve_csv_rows(c, out, with_best);
}

}  // namespace da2
