#pragma once

#include <compare>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linefig/star_catalog.hpp"

namespace linefig {

/// Unordered star pair, stored with `a < b`.
struct StarPair {
  std::string a;
  std::string b;

  StarPair() = default;
  StarPair(std::string first, std::string second);
  auto operator<=>(const StarPair&) const = default;
};

struct LineFigure {
  std::string culture_id;
  std::string figure_id;
  std::optional<std::string> name;
  std::vector<StarPair> edges;  // sorted, unique, no self-loops

  /// Dataset-wide identifier "culture_id/figure_id".
  [[nodiscard]] std::string key() const { return culture_id + "/" + figure_id; }
  /// Star ids incident to at least one edge, sorted.
  [[nodiscard]] std::vector<std::string> stars() const;
};

enum class Transmission { Written, Oral };

enum class Use { Navigation, Religious, Political, Folk, Uncategorized };

enum class Ancestry {
  IauGreek,
  Mesopotamian,
  Indian,
  Chinese,
  Austronesian,
  Polynesian,
  NorthAmerican,
  SouthAmerican,
  Sami,
  Egyptian,
  Uncategorized,
};

struct CultureRecord {
  std::string culture_id;
  Transmission transmission{Transmission::Written};
  std::vector<Use> uses;  // sorted, unique; {Uncategorized} stands alone
  Ancestry ancestry{Ancestry::Uncategorized};
  std::string timestamp_note;
};

std::string_view to_string(Transmission t);
std::string_view to_string(Use u);
std::string_view to_string(Ancestry a);
Transmission parse_transmission(std::string_view token);
Use parse_use(std::string_view token);
Ancestry parse_ancestry(std::string_view token);

/// Non-fatal notes collected while parsing or pruning.
struct Diagnostics {
  std::vector<std::string> warnings;
};

/// Parses a Stellarium-style constellationship file: one figure per line,
/// `figure_id n_lines s1 s2 s3 s4 ...` with 2*n_lines star ids. Star ids are
/// not resolved here; see Dataset::validate.
std::vector<LineFigure> parse_skyculture(std::istream& in, const std::string& culture_id,
                                         Diagnostics* diagnostics = nullptr, std::string_view source = "skyculture");
void write_skyculture(std::ostream& out, std::span<const LineFigure> figures);

/// CSV `culture_id,transmission,uses,ancestry[,timestamp_note]`, uses joined
/// by ';'. A header line starting with `culture_id` is optional.
std::vector<CultureRecord> parse_culture_metadata(std::istream& in, std::string_view source = "cultures");
void write_culture_metadata(std::ostream& out, std::span<const CultureRecord> cultures);

/// CSV `figure_id,use`; figure_id is either a full key `culture/figure` or a
/// figure id that is unique across the dataset (resolved by Dataset::validate).
std::map<std::string, Use> parse_use_overrides(std::istream& in, std::string_view source = "use_overrides");

struct Dataset {
  StarCatalog catalog;
  std::vector<CultureRecord> cultures;
  std::vector<LineFigure> figures;
  std::map<std::string, Use> use_overrides;

  /// Checks every cross-reference and rewrites override keys to full figure
  /// keys. Throws ValidationError on the first violation.
  void validate();

  [[nodiscard]] const CultureRecord& culture(std::string_view culture_id) const;
  /// Maps a full key or unambiguous bare figure id onto a full key.
  [[nodiscard]] std::string resolve_figure_key(std::string_view token) const;
  /// Per-constellation use: an override first, then the culture's single use;
  /// cultures with several uses leave un-overridden figures uncategorized.
  [[nodiscard]] Use figure_use(const LineFigure& figure) const;
};

enum class ReconnectRule {
  Chain,          // neighbours linked consecutively along a short nearest-neighbour chain
  StarToNearest,  // every neighbour linked to the neighbour closest to the removed star
};

struct PruneResult {
  std::optional<LineFigure> figure;  // empty when the figure lost all edges
  std::vector<std::string> removed_stars;
  std::vector<StarPair> added_edges;

  [[nodiscard]] bool dropped() const { return !figure.has_value(); }
};

/// Removes stars fainter than `max_mag` and reconnects their neighbours.
PruneResult prune_faint(const LineFigure& figure, const StarCatalog& catalog, double max_mag = 7.0,
                        ReconnectRule rule = ReconnectRule::Chain);

/// Order in which the chain rule links the given points: start from the
/// closest pair, then repeatedly attach the nearest remaining point to
/// whichever chain end is closer.
std::vector<std::size_t> nearest_neighbour_chain(std::span<const UnitVector> points);

}  // namespace linefig
