#include "fresnel/system_file.hpp"

#include <fstream>
#include <json.hpp>

#include "fresnel/errors.hpp"

namespace fresnel {

namespace {

RayMatrix element_matrix(const std::string& kind,
                         const std::vector<double>& params,
                         std::size_t index) {
  const std::string where = "element " + std::to_string(index) + " (" + kind + ")";
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw ParseError(where + ": expected " + std::to_string(n) +
                       " params, got " + std::to_string(params.size()));
  };
  try {
    if (kind == "free") {
      need(1);
      return free_space(params[0]);
    }
    if (kind == "lens") {
      need(1);
      return thin_lens(params[0]);
    }
    if (kind == "magnifier") {
      need(1);
      return magnifier(params[0]);
    }
    if (kind == "matrix") {
      need(4);
      return make_matrix(params[0], params[1], params[2], params[3]);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": unknown element kind");
}

}  // namespace

RayMatrix OpticalSystem::composed() const {
  RayMatrix total = RayMatrix::identity();
  for (const auto& el : elements) total = compose(el.matrix, total);
  return total;
}

OpticalSystem load_system(std::istream& is) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("system file: ") + e.what());
  }
  const nlohmann::json* arr = &doc;
  if (doc.is_object()) {
    if (!doc.contains("elements"))
      throw ParseError("system file: object form needs an 'elements' array");
    arr = &doc.at("elements");
  }
  if (!arr->is_array())
    throw ParseError("system file: expected an array of elements");

  OpticalSystem sys;
  std::size_t index = 0;
  for (const auto& item : *arr) {
    if (!item.is_object() || !item.contains("kind") || !item.contains("params"))
      throw ParseError("element " + std::to_string(index) +
                       ": need {kind, params}");
    std::string kind;
    std::vector<double> params;
    try {
      kind = item.at("kind").get<std::string>();
      params = item.at("params").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("element " + std::to_string(index) + ": " + e.what());
    }
    RayMatrix m = element_matrix(kind, params, index);
    sys.elements.push_back(SystemElement{kind, params, m});
    ++index;
  }
  return sys;
}

OpticalSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open system file '" + path + "'");
  return load_system(in);
}

}  // namespace fresnel
