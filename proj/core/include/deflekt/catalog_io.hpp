// Asteroid catalog: the built-in 30-object table and a CSV reader/writer.
#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deflekt/errors.hpp"
#include "deflekt/orbit_core.hpp"

namespace deflekt::catalog {

/// Catalog row as printed (AU, degrees, MJD) plus the converted elements.
struct AsteroidRecord {
    int id = 0;
    std::string name;
    double a_au = 0.0;
    double e = 0.0;
    double i_deg = 0.0;
    double argp_deg = 0.0;
    double raan_deg = 0.0;
    double mean_anomaly_deg = 0.0;
    double epoch_mjd = 0.0;
    double mass_kg = 0.0;
    std::optional<double> moid_km;  // listed nominal MOID, if any
    orbit::OrbitalElements elements;  // km, rad, MJD2000 days

    /// Fills `elements` from the printed fields and checks the catalog bounds:
    /// 1e7 <= mass <= 1e13 kg, 0.7 < a < 3.1 AU, 0 <= e < 0.95.
    static AsteroidRecord make(int id, std::string name, double a_au, double e, double i_deg,
                               double argp_deg, double raan_deg, double mean_anomaly_deg,
                               double epoch_mjd, double mass_kg,
                               std::optional<double> moid_km = std::nullopt);
    void validate() const;

    bool operator==(const AsteroidRecord& other) const;
};

/// Parse or validation failure; row is the 1-based line number (0 when not tied to a line).
class CatalogError : public InvalidInput {
public:
    CatalogError(const std::string& message, int row, std::string column = {});
    int row;
    std::string column;
};

inline constexpr const char* kCatalogHeader =
    "id,name,a_au,e,i_deg,argp_deg,raan_deg,M_deg,epoch_mjd,mass_kg";

/// The 30 objects of the reference study, ids 1..30.
std::vector<AsteroidRecord> load_builtin_catalog();

/// CSV with the kCatalogHeader columns and an optional trailing moid_km column;
/// lines starting with '#' and blank lines are skipped. Locale-independent.
std::vector<AsteroidRecord> read_catalog(std::istream& in);
std::vector<AsteroidRecord> read_catalog_file(const std::string& path);

/// Writes moid_km when any record carries it. Numbers use the shortest
/// representation that reads back to the same double.
void write_catalog(std::ostream& out, std::span<const AsteroidRecord> records);
void write_catalog_file(const std::string& path, std::span<const AsteroidRecord> records);

/// Throws InvalidInput for an unknown id.
const AsteroidRecord& find_record(std::span<const AsteroidRecord> records, int id);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace deflekt::catalog
