#include "rifs/scene.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "rifs/attractor.hpp"
#include "rifs/errors.hpp"

namespace rifs {

namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

double number(const json& node, const std::string& where) {
  if (!node.is_number()) fail(where, "expected a number");
  return node.get<double>();
}

std::vector<double> numbers(const json& node, std::size_t count, const std::string& where) {
  if (!node.is_array() || node.size() != count)
    fail(where, "expected an array of " + std::to_string(count) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(number(node[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

const json& field(const json& node, const char* key, const std::string& where) {
  if (!node.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  return node.at(key);
}

std::string type_of(const json& node, const std::string& where) {
  if (!node.is_object()) fail(where, "expected an object");
  const json& t = field(node, "type", where);
  if (!t.is_string()) fail(where + ".type", "expected a string");
  return t.get<std::string>();
}

Isometry2 parse_isometry(const json& node, const std::string& where) {
  const std::string type = type_of(node, where);
  try {
    if (type == "rotation") return Isometry2::rotation(number(field(node, "angle", where), where + ".angle"));
    if (type == "rotation_turns")
      return Isometry2::rotation_turns(number(field(node, "turns", where), where + ".turns"));
    if (type == "reflection")
      return Isometry2::reflection(number(field(node, "axis_angle", where), where + ".axis_angle"));
    if (type == "matrix") {
      const auto m = numbers(field(node, "m", where), 4, where + ".m");
      return Isometry2::from_matrix(m[0], m[1], m[2], m[3]);
    }
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    fail(where, msg);
  }
  fail(where + ".type", "unknown isometry type \"" + type + "\"");
}

BaseContraction parse_base(const json& node, const std::string& where) {
  const std::string type = type_of(node, where);
  if (type == "similarity") {
    const auto l = numbers(field(node, "lambda", where), 2, where + ".lambda");
    const auto c = numbers(field(node, "c", where), 2, where + ".c");
    return Similarity{{l[0], l[1]}, {c[0], c[1]}};
  }
  if (type == "affine") {
    const auto a = numbers(field(node, "a", where), 4, where + ".a");
    const auto b = numbers(field(node, "b", where), 2, where + ".b");
    return Affine{a[0], a[1], a[2], a[3], b[0], b[1]};
  }
  if (type == "radial")
    return Radial{number(field(node, "scale", where), where + ".scale"),
                  number(field(node, "offset", where), where + ".offset")};
  fail(where + ".type", "unknown contraction type \"" + type + "\"");
}

Contraction2 parse_contraction(const json& node, const std::string& where) {
  try {
    if (type_of(node, where) == "composed") {
      const auto m = numbers(field(node, "pre", where), 4, where + ".pre");
      const Isometry2 pre = Isometry2::from_matrix(m[0], m[1], m[2], m[3]);
      return Contraction2(Composed{pre, parse_base(field(node, "base", where), where + ".base")});
    }
    return std::visit([](const auto& base) { return Contraction2(base); }, parse_base(node, where));
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    fail(where, msg);
  }
}

json base_json(const BaseContraction& base) {
  return std::visit(Overloaded{
                        [](const Affine& a) {
                          return json{{"type", "affine"},
                                      {"a", {a.a11, a.a12, a.a21, a.a22}},
                                      {"b", {a.b1, a.b2}}};
                        },
                        [](const Similarity& s) {
                          return json{{"type", "similarity"},
                                      {"lambda", {s.lambda.real(), s.lambda.imag()}},
                                      {"c", {s.c.real(), s.c.imag()}}};
                        },
                        [](const Radial& r) {
                          return json{{"type", "radial"}, {"scale", r.scale}, {"offset", r.offset_x}};
                        },
                    },
                    base);
}

json matrix_json(const Isometry2& g) { return json::array({g.m11(), g.m12(), g.m21(), g.m22()}); }

json contraction_json(const Contraction2& f) {
  return std::visit(Overloaded{
                        [](const Composed& c) {
                          return json{{"type", "composed"}, {"pre", matrix_json(c.pre)}, {"base", base_json(c.base)}};
                        },
                        [](const auto& base) { return base_json(BaseContraction(base)); },
                    },
                    f.variant());
}

std::string document(std::span<const Isometry2> isometries, std::span<const Contraction2> contractions,
                     const std::vector<double>* weights, const std::optional<Rect>& window,
                     const std::optional<int>& resolution) {
  json doc;
  doc["isometries"] = json::array();
  for (const auto& g : isometries) doc["isometries"].push_back({{"type", "matrix"}, {"m", matrix_json(g)}});
  doc["contractions"] = json::array();
  for (const auto& f : contractions) doc["contractions"].push_back(contraction_json(f));
  if (weights) doc["weights"] = *weights;
  if (window || resolution) {
    json render = json::object();
    if (window) render["window"] = {window->xmin, window->ymin, window->xmax, window->ymax};
    if (resolution) render["resolution"] = *resolution;
    doc["render"] = render;
  }
  return doc.dump(2) + "\n";
}

}  // namespace

Scene parse_scene(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scene syntax error: ") + e.what());
  }
  if (!doc.is_object()) fail("scene", "top level must be an object");

  std::vector<Isometry2> isometries;
  const json& isos = field(doc, "isometries", "scene");
  if (!isos.is_array()) fail("isometries", "expected an array");
  for (std::size_t i = 0; i < isos.size(); ++i)
    isometries.push_back(parse_isometry(isos[i], "isometries[" + std::to_string(i) + "]"));
  if (isometries.empty()) fail("isometries", "m > 0 required");

  std::vector<Contraction2> contractions;
  const json& cons = field(doc, "contractions", "scene");
  if (!cons.is_array()) fail("contractions", "expected an array");
  for (std::size_t i = 0; i < cons.size(); ++i)
    contractions.push_back(parse_contraction(cons[i], "contractions[" + std::to_string(i) + "]"));
  if (contractions.empty()) fail("contractions", "n > 0 required");

  const std::size_t total = isometries.size() + contractions.size();
  std::vector<double> weights(total, 1.0 / static_cast<double>(total));
  if (doc.contains("weights")) {
    weights = numbers(doc["weights"], total, "weights");
    for (std::size_t i = 0; i < total; ++i)
      if (!(weights[i] > 0.0)) fail("weights[" + std::to_string(i) + "]", "weights must be positive");
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (double& w : weights) w /= sum;
  }

  Scene scene{RSystem(std::move(isometries), std::move(contractions), std::move(weights)), {}};
  scene.window = default_window(bounding_radius(scene.system));
  if (doc.contains("render")) {
    const json& render = doc["render"];
    if (!render.is_object()) fail("render", "expected an object");
    if (render.contains("window")) {
      const auto w = numbers(render["window"], 4, "render.window");
      const Rect window{w[0], w[1], w[2], w[3]};
      if (!(window.width() > 0.0) || std::abs(window.width() - window.height()) > 1e-12 * window.width())
        fail("render.window", "window must be a non-empty square");
      scene.window = window;
      scene.window_from_file = true;
    }
    if (render.contains("resolution")) {
      const json& r = render["resolution"];
      if (!r.is_number_integer() || r.get<long long>() < 2) fail("render.resolution", "expected an integer >= 2");
      scene.resolution = r.get<int>();
      scene.resolution_from_file = true;
    }
  }
  return scene;
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scene '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scene(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string scene_json(const RSystem& system, const std::optional<Rect>& window, const std::optional<int>& resolution) {
  const std::vector<double> weights(system.weights().begin(), system.weights().end());
  return document(system.isometries(), system.contractions(), &weights, window, resolution);
}

std::string flat_scene_json(const FlatIFS& ifs, const std::optional<Rect>& window,
                            const std::optional<int>& resolution) {
  const Isometry2 id = Isometry2::identity();
  return document(std::span<const Isometry2>(&id, 1), ifs.maps, nullptr, window, resolution);
}

}  // namespace rifs
