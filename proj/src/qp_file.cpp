#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qtfunnel/errors.hpp"
#include "qtfunnel/problems.hpp"

namespace qtf {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& why) {
  throw ParseError("field '" + field + "': " + why);
}

double read_number(const json& node, const std::string& field) {
  if (!node.is_number()) {
    field_error(field, "expected a number");
  }
  return node.get<double>();
}

Vector read_vector(const json& node, const std::string& field, int n) {
  if (!node.is_array()) {
    field_error(field, "expected an array");
  }
  if (static_cast<int>(node.size()) != n) {
    field_error(field, "expected " + std::to_string(n) + " entries, got " +
                           std::to_string(node.size()));
  }
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    v(i) = read_number(node[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix read_matrix(const json& node, const std::string& field, int n) {
  if (!node.is_array() || static_cast<int>(node.size()) != n) {
    field_error(field, "expected " + std::to_string(n) + " rows");
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m.row(i) = read_vector(node[i], field + "[" + std::to_string(i) + "]", n);
  }
  return m;
}

void require_symmetric(const Matrix& m, const std::string& field) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      const double scale = std::max({1.0, std::abs(m(i, j)), std::abs(m(j, i))});
      if (!(std::abs(m(i, j) - m(j, i)) <= 1e-12 * scale)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "not symmetric: " << field << "[" << i << "][" << j
            << "] = " << m(i, j) << " but " << field << "[" << j << "][" << i
            << "] = " << m(j, i);
        field_error(field, msg.str());
      }
    }
  }
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

void QpFileModel::validate() const {
  if (n <= 0) {
    field_error("n", "must be a positive integer");
  }
  if (m() > n) {
    field_error("constraints", "more constraints than variables");
  }
  if (Q.rows() != n || Q.cols() != n) {
    field_error("Q", "wrong shape");
  }
  if (q.size() != n) {
    field_error("q", "wrong length");
  }
  require_symmetric(Q, "Q");
  for (int i = 0; i < m(); ++i) {
    const std::string field = "constraints[" + std::to_string(i) + "]";
    const QpConstraint& con = constraints[i];
    if (con.A.rows() != n || con.A.cols() != n || con.a.size() != n) {
      field_error(field, "wrong shape");
    }
    require_symmetric(con.A, field + ".A");
  }
  if (x0 && x0->size() != n) {
    field_error("x0", "wrong length");
  }
}

Problem QpFileModel::to_problem() const {
  validate();
  Problem p;
  p.name = name;
  p.n = n;
  p.m = m();
  const Matrix quad = Q;
  const Vector lin = q;
  const double constant = c0;
  const std::vector<QpConstraint> cons = constraints;
  p.objective = [quad, lin, constant](const Vector& x) {
    return 0.5 * x.dot(quad * x) + lin.dot(x) + constant;
  };
  p.objective_gradient = [quad, lin](const Vector& x) -> Vector {
    return quad * x + lin;
  };
  if (p.m > 0) {
    p.constraints = [cons](const Vector& x) {
      Vector c(static_cast<Eigen::Index>(cons.size()));
      for (std::size_t i = 0; i < cons.size(); ++i) {
        c(i) = 0.5 * x.dot(cons[i].A * x) + cons[i].a.dot(x) + cons[i].b;
      }
      return c;
    };
    p.constraint_jacobian = [cons](const Vector& x) {
      Matrix j(x.size(), static_cast<Eigen::Index>(cons.size()));
      for (std::size_t i = 0; i < cons.size(); ++i) {
        j.col(i) = cons[i].A * x + cons[i].a;
      }
      return j;
    };
  }
  p.lagrangian_hessian = [quad, cons](const Vector&, const Vector& lambda) {
    Matrix hess = quad;
    for (std::size_t i = 0; i < cons.size(); ++i) {
      hess += lambda(i) * cons[i].A;
    }
    return Matrix(0.5 * (hess + hess.transpose()));
  };
  return p;
}

QpFileModel parse_qp_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("problem file must contain a JSON object");
  }

  QpFileModel model;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) {
      field_error("name", "expected a string");
    }
    model.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() <= 0) {
    field_error("n", "required positive integer");
  }
  model.n = doc["n"].get<int>();
  const int n = model.n;

  model.Q = doc.contains("Q") ? read_matrix(doc["Q"], "Q", n) : Matrix(Matrix::Zero(n, n));
  model.q = doc.contains("q") ? read_vector(doc["q"], "q", n) : Vector(Vector::Zero(n));
  model.c0 = doc.contains("c0") ? read_number(doc["c0"], "c0") : 0.0;

  if (doc.contains("constraints")) {
    const json& list = doc["constraints"];
    if (!list.is_array()) {
      field_error("constraints", "expected an array");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string field = "constraints[" + std::to_string(i) + "]";
      const json& item = list[i];
      if (!item.is_object()) {
        field_error(field, "expected an object");
      }
      QpConstraint con;
      con.A = item.contains("A") ? read_matrix(item["A"], field + ".A", n)
                                 : Matrix(Matrix::Zero(n, n));
      con.a = item.contains("a") ? read_vector(item["a"], field + ".a", n)
                                 : Vector(Vector::Zero(n));
      con.b = item.contains("b") ? read_number(item["b"], field + ".b") : 0.0;
      model.constraints.push_back(std::move(con));
    }
  }
  if (doc.contains("m")) {
    if (!doc["m"].is_number_integer() || doc["m"].get<long long>() != model.m()) {
      field_error("m", "does not match the number of constraints (" +
                           std::to_string(model.m()) + ")");
    }
  }
  if (doc.contains("x0")) {
    model.x0 = read_vector(doc["x0"], "x0", n);
  }
  model.validate();
  return model;
}

QpFileModel load_qp_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open problem file '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_qp_json(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json qp_to_json(const QpFileModel& model) {
  json doc;
  doc["name"] = model.name;
  doc["n"] = model.n;
  doc["m"] = model.m();
  doc["Q"] = matrix_to_json(model.Q);
  doc["q"] = vector_to_json(model.q);
  doc["c0"] = model.c0;
  json cons = json::array();
  for (const QpConstraint& con : model.constraints) {
    cons.push_back({{"A", matrix_to_json(con.A)},
                    {"a", vector_to_json(con.a)},
                    {"b", con.b}});
  }
  doc["constraints"] = std::move(cons);
  if (model.x0) {
    doc["x0"] = vector_to_json(*model.x0);
  }
  return doc;
}

void write_qp_file(const QpFileModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write problem file '" + path.string() + "'");
  }
  out << qp_to_json(model).dump(2) << '\n';
}

LoadedProblem load_problem(std::string_view name_or_path) {
  for (RegistryEntry& e : registry()) {
    if (e.name == name_or_path) {
      return {std::move(e.problem), std::move(e.x0)};
    }
  }
  const std::filesystem::path path{std::string(name_or_path)};
  if (!std::filesystem::exists(path)) {
    // Reuse the registry error so the caller sees the known names.
    find_registry_problem(name_or_path);
  }
  const QpFileModel model = load_qp_file(path);
  LoadedProblem loaded{model.to_problem(), model.x0.value_or(Vector::Ones(model.n))};
  return loaded;
}

}  // namespace qtf
