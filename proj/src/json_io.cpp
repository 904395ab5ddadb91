#include "fsl/json_io.hpp"

#include <sstream>

#include "fsl/errors.hpp"

namespace fsl {

Json to_json(const GroupSpec& g) {
  Json j;
  j["orders"] = std::vector<std::int64_t>(g.orders().begin(), g.orders().end());
  return j;
}

Json to_json(const GroupElement& e) { return Json(e.coords); }

Json to_json(const Subgroup& s) {
  Json els = Json::array();
  for (const auto& e : s.elements()) els.push_back(to_json(e));
  Json j;
  j["elements"] = std::move(els);
  return j;
}

Json to_json(const FSemilattice& a) {
  Json j;
  j["group"] = to_json(a.group());
  j["carrier"] = std::vector<std::string>(a.labels().begin(), a.labels().end());
  j["meet"] = a.meet_table();
  Json action = Json::array();
  for (const auto& p : a.action()) action.push_back(p);
  j["action"] = std::move(action);
  return j;
}

GroupSpec group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("orders") || !j["orders"].is_array()) {
    throw ShapeError("group must be an object with an \"orders\" array");
  }
  std::vector<std::int64_t> orders;
  for (const auto& o : j["orders"]) {
    if (!o.is_number_integer()) throw ShapeError("group orders must be integers");
    orders.push_back(o.get<std::int64_t>());
  }
  return GroupSpec(std::move(orders));
}

namespace {

std::vector<Index> index_row(const Json& row, const char* what) {
  if (!row.is_array()) throw ShapeError(std::string(what) + " rows must be arrays");
  std::vector<Index> out;
  for (const auto& v : row) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw ShapeError(std::string(what) + " entries must be nonnegative integers");
    }
    out.push_back(v.get<Index>());
  }
  return out;
}

}  // namespace

FSemilattice algebra_from_json(const Json& j) {
  if (!j.is_object()) throw ShapeError("algebra must be a JSON object");
  for (const char* key : {"group", "carrier", "meet", "action"}) {
    if (!j.contains(key)) throw ShapeError(std::string("algebra is missing \"") + key + "\"");
  }
  auto group = group_from_json(j["group"]);
  if (!j["carrier"].is_array()) throw ShapeError("carrier must be an array of labels");
  std::vector<std::string> labels;
  for (const auto& l : j["carrier"]) {
    if (!l.is_string()) throw ShapeError("carrier labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  if (!j["meet"].is_array() || !j["action"].is_array()) throw ShapeError("meet and action must be arrays");
  std::vector<std::vector<Index>> meet;
  for (const auto& row : j["meet"]) meet.push_back(index_row(row, "meet"));
  std::vector<Permutation> action;
  for (const auto& row : j["action"]) action.push_back(index_row(row, "action"));
  return FSemilattice(std::move(group), std::move(labels), std::move(meet), std::move(action));
}

namespace {

bool is_flat(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

void write(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) os << ",\n";
      first = false;
      os << inner << Json(k).dump() << ": ";
      write(os, v, indent + 1);
    }
    os << '\n' << pad << '}';
  } else if (j.is_array() && !is_flat(j)) {
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ",\n";
      os << inner;
      write(os, j[i], indent + 1);
    }
    os << '\n' << pad << ']';
  } else if (j.is_array()) {
    os << '[';
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << j[i].dump();
    os << ']';
  } else {
    os << j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << '\n';
  return os.str();
}

}  // namespace fsl
