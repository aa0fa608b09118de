#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypflow/error.hpp"
#include "hypflow/replin.hpp"

namespace hypflow {

Representation::Representation(std::string name, std::vector<std::string> generators,
                               std::vector<SquareMatrix> images)
    : name_(std::move(name)), generators_(std::move(generators)) {
  if (images.size() != generators_.size() || images.empty())
    throw Error(Errc::InvalidArgument, "one image per generator required");
  dimension_ = static_cast<std::size_t>(images.front().rows());
  for (auto& g : images) {
    if (g.rows() != g.cols() || static_cast<std::size_t>(g.rows()) != dimension_)
      throw Error(Errc::InvalidArgument, "images must be square of equal size");
    if (!g.allFinite()) throw Error(Errc::InvalidArgument, "non-finite image entry");
    if (std::abs(g.determinant()) < 1e-300) throw Error(Errc::InvalidArgument, "singular image");
    images_.push_back(g);
    images_.push_back(g.inverse());
  }
  if (dimension_ == 2)
    for (const auto& g : images_) images2_.push_back(g);
}

std::string Representation::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["dimension"] = dimension_;
  nlohmann::ordered_json gens = nlohmann::ordered_json::object();
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    std::vector<double> entries;
    const auto& m = images_[2 * g];
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(m(r, c));
    gens[generators_[g]] = entries;
  }
  j["generators"] = gens;
  return j.dump(2);
}

Representation Representation::from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  try {
    const std::size_t m = j.at("dimension").get<std::size_t>();
    std::vector<std::string> names;
    std::vector<SquareMatrix> images;
    for (auto it = j.at("generators").begin(); it != j.at("generators").end(); ++it) {
      auto entries = it.value().get<std::vector<double>>();
      if (entries.size() != m * m) throw Error(Errc::ParseError, "wrong entry count for " + it.key());
      SquareMatrix g(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
          g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entries[r * m + c];
      names.push_back(it.key());
      images.push_back(std::move(g));
    }
    return Representation(j.value("name", std::string("custom")), std::move(names), std::move(images));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

double octagon_u() {
  const double t = M_PI / 8.0;
  return std::log((std::sqrt(std::cos(2.0 * t)) + std::cos(t)) / std::sin(t));
}

Representation octagon_rep() {
  const double t = M_PI / 8.0;
  const Eigen::Matrix2d a = axis_translation(octagon_u());
  auto conj = [&](double angle) -> SquareMatrix { return rotation(angle) * a * rotation(-angle); };
  return Representation("octagon", {"s1", "s2", "s3", "s4"}, {SquareMatrix(a), conj(3 * t), conj(6 * t), conj(t)});
}

Representation freeproduct_rep(double u) {
  SquareMatrix s1 = axis_translation(-u) * rotation(M_PI / 2.0) * axis_translation(u);
  SquareMatrix s2 = rotation(M_PI / 3.0);
  std::ostringstream name;
  name << "freeproduct:" << u;
  return Representation(name.str(), {"s1", "s2"}, {s1, s2});
}

Representation representation_by_name(const std::string& spec) {
  if (spec == "octagon") return octagon_rep();
  if (spec.starts_with("freeproduct")) {
    double u = 0.0;
    if (spec.size() > 11) {
      if (spec[11] != ':') throw Error(Errc::InvalidArgument, "expected freeproduct:<u>");
      try {
        u = std::stod(spec.substr(12));
      } catch (const std::exception&) {
        throw Error(Errc::InvalidArgument, "bad parameter in " + spec);
      }
    }
    return freeproduct_rep(u);
  }
  std::ifstream in(spec);
  if (!in) throw Error(Errc::InvalidArgument, "unknown representation '" + spec + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return Representation::from_json(ss.str());
}

double relator_defect(const Representation& rho, const Presentation& p) {
  const auto n = static_cast<Eigen::Index>(rho.dimension());
  const SquareMatrix id = SquareMatrix::Identity(n, n);
  double worst = 0.0;
  for (std::size_t c = 0; c < 2 * rho.generator_count(); ++c) {
    Letter x(static_cast<std::uint16_t>(c));
    worst = std::max(worst, (rho.image(x) * rho.image(x.inverse()) - id).cwiseAbs().maxCoeff());
  }
  for (const auto& r : p.relators()) {
    SquareMatrix m = id;
    for (Letter x : r) m = m * rho.image(x);
    worst = std::max(worst, std::min((m - id).cwiseAbs().maxCoeff(), (m + id).cwiseAbs().maxCoeff()));
  }
  return worst;
}

}  // namespace hypflow
