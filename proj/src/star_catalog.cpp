#include "linefig/star_catalog.hpp"

#include "linefig/csv.hpp"
#include "linefig/errors.hpp"

namespace linefig {

void StarCatalog::add(Star star) {
  if (star.id.empty()) throw ValidationError("empty star id");
  if (!(star.ra_deg >= 0.0 && star.ra_deg < 360.0)) throw ValidationError("ra out of range for star " + star.id);
  if (!(star.dec_deg >= -90.0 && star.dec_deg <= 90.0)) throw ValidationError("dec out of range for star " + star.id);
  if (index_.contains(star.id)) throw ValidationError("duplicate id " + star.id);
  index_.emplace(star.id, stars_.size());
  positions_.push_back(to_unit_vector(star.ra_deg, star.dec_deg));
  stars_.push_back(std::move(star));
}

const Star* StarCatalog::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &stars_[it->second];
}

std::size_t StarCatalog::index_of(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) throw ValidationError("unknown star id " + std::string(id));
  return it->second;
}

const Star& StarCatalog::at(std::string_view id) const { return stars_[index_of(id)]; }

const UnitVector& StarCatalog::position(std::string_view id) const { return positions_[index_of(id)]; }

StarCatalog parse_catalog(std::istream& in, std::string_view source) {
  csv::LineReader reader(in);
  std::string line;
  const auto where = [&] { return std::string(source) + ":" + std::to_string(reader.line_number()) + ": "; };

  if (!reader.next(line)) throw ValidationError(std::string(source) + ": empty catalog");
  const auto header = csv::split(line);
  if (header != std::vector<std::string>{"id", "ra_deg", "dec_deg", "mag"}) {
    throw ValidationError(where() + "expected header id,ra_deg,dec_deg,mag");
  }

  StarCatalog catalog;
  while (reader.next(line)) {
    const auto fields = csv::split(line);
    if (fields.size() != 4) throw ValidationError(where() + "malformed row, expected 4 fields");
    try {
      catalog.add(Star{fields[0], csv::parse_double(fields[1], "ra_deg"), csv::parse_double(fields[2], "dec_deg"),
                       csv::parse_double(fields[3], "mag")});
    } catch (const ValidationError& e) {
      throw ValidationError(where() + e.what());
    }
  }
  return catalog;
}

void write_catalog(std::ostream& out, const StarCatalog& catalog) {
  out << "id,ra_deg,dec_deg,mag\n";
  for (const auto& s : catalog.stars()) {
    out << s.id << ',' << csv::format_double(s.ra_deg) << ',' << csv::format_double(s.dec_deg) << ','
        << csv::format_double(s.mag) << '\n';
  }
}

}  // namespace linefig
