#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "linefig/geometry.hpp"

namespace linefig {

struct Star {
  std::string id;
  double ra_deg{};   // [0, 360)
  double dec_deg{};  // [-90, 90]
  double mag{};      // apparent visual magnitude, lower is brighter
};

/// Id-indexed star collection. Positions are cached as unit vectors.
class StarCatalog {
 public:
  /// Throws ValidationError on a duplicate id or out-of-range coordinates.
  void add(Star star);

  [[nodiscard]] const Star* find(std::string_view id) const;
  /// Throws ValidationError for an unknown id.
  [[nodiscard]] const Star& at(std::string_view id) const;
  [[nodiscard]] const UnitVector& position(std::string_view id) const;
  [[nodiscard]] bool contains(std::string_view id) const { return find(id) != nullptr; }

  [[nodiscard]] std::size_t size() const { return stars_.size(); }
  [[nodiscard]] const std::vector<Star>& stars() const { return stars_; }

 private:
  [[nodiscard]] std::size_t index_of(std::string_view id) const;

  std::vector<Star> stars_;
  std::vector<UnitVector> positions_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Reads a catalog CSV with header `id,ra_deg,dec_deg,mag`. Errors carry the
/// source name and line number.
StarCatalog parse_catalog(std::istream& in, std::string_view source = "catalog");

/// Writes stars in the same CSV format, in insertion order.
void write_catalog(std::ostream& out, const StarCatalog& catalog);

}  // namespace linefig
