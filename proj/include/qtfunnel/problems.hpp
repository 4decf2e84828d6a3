#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtfunnel/model.hpp"

namespace qtf {

struct RegistryEntry {
  std::string name;
  std::string description;
  Problem problem;
  Vector x0;
  /// Known minimizer, when one is unique and available in closed form.
  std::optional<Vector> solution;
};

/// Built-in test problems, in a fixed order.
std::vector<RegistryEntry> registry();

std::vector<std::string> registry_names();

/// Throws UnknownProblem listing the registered names.
RegistryEntry find_registry_problem(std::string_view name);

/// One equality constraint ½xᵀAx + aᵀx + b = 0.
struct QpConstraint {
  Matrix A;
  Vector a;
  double b = 0.0;
};

/**
 * Problem file model: objective ½xᵀQx + qᵀx + c0 with quadratic equality
 * constraints and x >= 0.
 */
struct QpFileModel {
  std::string name = "qp";
  int n = 0;
  Matrix Q;
  Vector q;
  double c0 = 0.0;
  std::vector<QpConstraint> constraints;
  std::optional<Vector> x0;

  int m() const { return static_cast<int>(constraints.size()); }

  /// Throws ParseError naming the offending entry.
  void validate() const;
  /// Problem with exact derivatives and Lagrangian Hessian Q + Σ λᵢ Aᵢ.
  Problem to_problem() const;
};

QpFileModel parse_qp_json(std::string_view text);
QpFileModel load_qp_file(const std::filesystem::path& path);
nlohmann::json qp_to_json(const QpFileModel& model);
void write_qp_file(const QpFileModel& model, const std::filesystem::path& path);

struct LoadedProblem {
  Problem problem;
  Vector x0;
};

/// Registry name, or else a path to a JSON problem file. A file without x0
/// starts from the all-ones vector.
LoadedProblem load_problem(std::string_view name_or_path);

}  // namespace qtf
