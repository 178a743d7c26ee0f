#include "topodyn/system_doc.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

namespace topodyn {

DocumentError::DocumentError(const std::string& message)
    : std::runtime_error(message) {}

std::vector<std::string> default_point_names(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (i < 26) {
      names.emplace_back(1, static_cast<char>('a' + i));
    } else {
      names.push_back("p" + std::to_string(i));
    }
  }
  return names;
}

NamedSystem with_default_names(const DynSystem& sys) {
  return NamedSystem{default_point_names(sys.point_count()), sys};
}

std::string format_subset(const std::vector<std::string>& names,
                          SubsetMask s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  s.for_each_point([&](int x) {
    if (!first) out << ',';
    first = false;
    out << names[static_cast<std::size_t>(x)];
  });
  out << '}';
  return out.str();
}

NamedSystem parse_system_document(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw DocumentError("document must be a JSON object");
  }
  for (const char* key : {"points", "opens", "map"}) {
    if (!doc.contains(key)) {
      throw DocumentError(std::string("document is missing \"") + key + "\"");
    }
  }

  const auto& points = doc["points"];
  if (!points.is_array() || points.empty()) {
    throw DocumentError("\"points\" must be a nonempty array of names");
  }
  if (points.size() > static_cast<std::size_t>(kMaxPoints)) {
    throw DocumentError("more than 64 points are not supported");
  }
  std::vector<std::string> names;
  std::map<std::string, int> index_of;
  for (const auto& entry : points) {
    if (!entry.is_string() || entry.get<std::string>().empty()) {
      throw DocumentError("point names must be nonempty strings");
    }
    std::string name = entry.get<std::string>();
    if (!index_of.emplace(name, static_cast<int>(names.size())).second) {
      throw DocumentError("duplicate point name \"" + name + "\"");
    }
    names.push_back(std::move(name));
  }
  const int n = static_cast<int>(names.size());

  const auto resolve = [&](const nlohmann::json& value,
                           const char* where) -> int {
    if (!value.is_string()) {
      throw DocumentError(std::string(where) + " must use point names");
    }
    const auto it = index_of.find(value.get<std::string>());
    if (it == index_of.end()) {
      throw DocumentError(std::string("unknown point \"") +
                          value.get<std::string>() + "\" in " + where);
    }
    return it->second;
  };

  const auto& opens = doc["opens"];
  if (!opens.is_array()) {
    throw DocumentError("\"opens\" must be an array of name arrays");
  }
  std::vector<SubsetMask> family;
  family.reserve(opens.size());
  for (const auto& open : opens) {
    if (!open.is_array()) {
      throw DocumentError("each open must be an array of point names");
    }
    SubsetMask mask;
    for (const auto& member : open) {
      mask.add(resolve(member, "opens"));
    }
    family.push_back(mask);
  }

  const auto& map_obj = doc["map"];
  if (!map_obj.is_object()) {
    throw DocumentError("\"map\" must be an object of name -> name entries");
  }
  std::vector<std::uint8_t> image(static_cast<std::size_t>(n), 0);
  std::vector<bool> assigned(static_cast<std::size_t>(n), false);
  for (const auto& [key, value] : map_obj.items()) {
    const auto it = index_of.find(key);
    if (it == index_of.end()) {
      throw DocumentError("map mentions unknown point \"" + key + "\"");
    }
    const auto source = static_cast<std::size_t>(it->second);
    if (assigned[source]) {
      throw DocumentError("map assigns \"" + key + "\" twice");
    }
    assigned[source] = true;
    image[source] = static_cast<std::uint8_t>(resolve(value, "map"));
  }
  for (int x = 0; x < n; ++x) {
    if (!assigned[static_cast<std::size_t>(x)]) {
      throw DocumentError("map is missing an image for \"" +
                          names[static_cast<std::size_t>(x)] + "\"");
    }
  }

  FiniteTopology topo = FiniteTopology::validate(n, family);
  return NamedSystem{std::move(names),
                     DynSystem(std::move(topo), SelfMap(std::move(image)))};
}

std::string serialize_system_document(const NamedSystem& named, bool pretty) {
  const auto& names = named.point_names;
  nlohmann::ordered_json doc;
  doc["points"] = names;

  nlohmann::ordered_json opens = nlohmann::ordered_json::array();
  for (SubsetMask open : named.system.topology().opens()) {
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    open.for_each_point(
        [&](int x) { members.push_back(names[static_cast<std::size_t>(x)]); });
    opens.push_back(std::move(members));
  }
  doc["opens"] = std::move(opens);

  nlohmann::ordered_json map_obj = nlohmann::ordered_json::object();
  for (int x = 0; x < named.system.point_count(); ++x) {
    map_obj[names[static_cast<std::size_t>(x)]] =
        names[static_cast<std::size_t>(named.system.map().apply(x))];
  }
  doc["map"] = std::move(map_obj);

  return pretty ? doc.dump(2) : doc.dump();
}

}  // namespace topodyn
