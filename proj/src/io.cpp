#include "qspf/io.hpp"

#include <fstream>
#include <vector>

namespace qspf {

using nlohmann::json;

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd from_std(const std::vector<double>& v)
{
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

json target_to_json(const ChebTarget& t)
{
  return json{{"degree_half", t.degree_half()}, {"coeffs", to_std(t.coeffs)}};
}

ChebTarget target_from_json(const json& j)
{
  try {
    const auto coeffs = j.at("coeffs").get<std::vector<double>>();
    if (j.contains("degree_half") && j.at("degree_half").get<long long>() + 1 != static_cast<long long>(coeffs.size()))
      throw InvalidArgument("degree_half does not match the number of coefficients");
    return ChebTarget(from_std(coeffs));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed target JSON: ") + e.what());
  }
}

json phases_to_json(const PhaseFactors& psi, json meta)
{
  return json{{"psi", to_std(psi.reduced)}, {"meta", std::move(meta)}};
}

PhaseFactors phases_from_json(const json& j)
{
  try {
    const auto v = j.at("psi").get<std::vector<double>>();
    if (v.empty()) throw InvalidArgument("empty phase list");
    return PhaseFactors{from_std(v)};
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed phases JSON: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j)
{
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace qspf
