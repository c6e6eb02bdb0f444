#include "deflekt/catalog_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace deflekt::catalog {

namespace {

constexpr std::array<const char*, 10> kColumns{"id",       "name",     "a_au", "e",
                                               "i_deg",    "argp_deg", "raan_deg",
                                               "M_deg",    "epoch_mjd", "mass_kg"};
constexpr const char* kMoidColumn = "moid_km";

struct Row {
    int id;
    const char* name;
    double a, e, i, argp, raan, m, epoch, mass, moid;
};

// Values as printed in the reference table (columns a, e, i, argp, raan, M, epoch, mass, MOID).
constexpr std::array<Row, 30> kBuiltin{{
    {1, "2004VD17", 1.50, 0.58, 4.22, 90.7, 224.2, 286.9, 53800.5, 2.7e11, 229479.20},
    {2, "Apophis", 0.92, 0.19, 3.33, 126.3, 204.4, 222.2, 53800.5, 4.6e10, 36651.75},
    {3, "2005WY55", 2.47, 0.72, 7.26, 285.9, 248.4, 3.30, 53800.5, 1.9e10, 696520.60},
    {4, "1997XR2", 1.07, 0.20, 7.17, 84.6, 250.8, 211.8, 53800.5, 1.7e10, 3277.43},
    {5, "1994WR12", 0.75, 0.39, 6.81, 205.8, 62.8, 27.3, 53700, 2.0e9, 283313.30},
    {6, "1979XB", 2.35, 0.72, 25.1, 75.7, 85.5, 62.0, 53700, 4.4e11, 3720840.42},
    {7, "2000SG344", 0.97, 0.06, 0.11, 274.9, 192.3, 132.3, 53800.5, 7.1e7, 124351.73},
    {8, "2000QS7", 2.68, 0.66, 3.19, 218.7, 153.5, 84.8, 53800.5, 9.9e10, 542496.18},
    {9, "1998HJ3", 1.98, 0.74, 6.54, 92.7, 224.9, 333.6, 50926.5, 4.5e11, 1907030.74},
    {10, "2005TU45", 1.97, 0.49, 28.5, 76.8, 120.2, 34.1, 53651.5, 3.3e12, 38152163.70},
    {11, "2004XK3", 1.21, 0.25, 1.43, 302.2, 58.1, 22.0, 53800.5, 1.1e8, 168758.33},
    {12, "1994GK", 1.92, 0.59, 5.60, 111.4, 15.4, 17.3, 49450.5, 1.5e8, 445443.47},
    {13, "2000SB45", 1.55, 0.39, 3.67, 216.3, 195.5, 214.4, 53700, 1.3e8, 199226.54},
    {14, "2001CA21", 1.66, 0.77, 4.93, 218.8, 46.4, 65.5, 53700, 4.3e11, 5574409.52},
    {15, "2005QK76", 1.40, 0.51, 22.9, 266.1, 337.6, 36.1, 53613.5, 4.1e7, 122907.28},
    {16, "2002TX55", 2.23, 0.57, 4.37, 148.8, 190.2, 16.8, 53800.5, 3.4e8, 534543.89},
    {17, "2005EL70", 2.27, 0.92, 16.18, 167.5, 167.5, 12.0, 53438.5, 1.9e8, 21308100.31},
    {18, "2001BB16", 0.85, 0.17, 2.02, 195.5, 122.5, 327.4, 53800.5, 1.5e9, 704667.59},
    {19, "2002VU17", 2.47, 0.61, 1.49, 308.75, 55.67, 11.37, 52599.5, 7.3e7, 1500966.15},
    {20, "2000TU28", 1.07, 0.18, 15.64, 280.6, 203.1, 227.0, 53800.5, 3.0e10, 166332.26},
    {21, "2001AV43", 1.27, 0.23, 0.27, 43.0, 30.7, 226.9, 53800.5, 1.2e8, 632550.85},
    {22, "2002RB182", 2.54, 0.65, 0.22, 254.3, 165.5, 347.4, 52532.5, 1.1e9, 302338.44},
    {23, "2002GJ8", 2.97, 0.82, 5.30, 180.3, 144.2, 261.3, 53800.5, 1.3e11, 13925769.75},
    {24, "2001FB90", 2.48, 0.78, 1.92, 14.5, 266.3, 343.3, 51993.5, 5.7e10, 4781828.50},
    {25, "2005NX55", 1.52, 0.58, 26.16, 277.2, 106.4, 327.2, 53563.5, 3.8e9, 5098118.30},
    {26, "1996TC1", 1.86, 0.72, 14.53, 258.8, 5.01, 22.8, 50363.5, 2.3e8, 11305879.51},
    {27, "6344P-L", 2.64, 0.64, 4.66, 232.6, 184.9, 349.8, 37203.5, 1.2e10, 4183900.25},
    {28, "2004ME6", 2.36, 0.57, 9.44, 210.3, 112.2, 346.1, 53182.5, 1.5e9, 4343813.94},
    {29, "2001QJ96", 1.59, 0.79, 5.87, 121.3, 339.1, 333.9, 52147.5, 3.3e9, 292749.39},
    {30, "2004GE2", 2.04, 0.70, 2.16, 259.9, 45.1, 341.6, 53112.5, 8.0e9, 856426.32},
}};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto pos = line.find(',');
        out.push_back(trim(line.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        line.remove_prefix(pos + 1);
    }
    return out;
}

template <class T>
T parse_number(std::string_view field, int row, const char* column) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw CatalogError("row " + std::to_string(row) + ": column '" + column +
                               "' is not a number: '" + std::string(field) + "'",
                           row, column);
    }
    return value;
}

}  // namespace

CatalogError::CatalogError(const std::string& message, int row_, std::string column_)
    : InvalidInput(message), row(row_), column(std::move(column_)) {}

AsteroidRecord AsteroidRecord::make(int id, std::string name, double a_au, double e, double i_deg,
                                    double argp_deg, double raan_deg, double mean_anomaly_deg,
                                    double epoch_mjd, double mass_kg, std::optional<double> moid_km) {
    AsteroidRecord r;
    r.id = id;
    r.name = std::move(name);
    r.a_au = a_au;
    r.e = e;
    r.i_deg = i_deg;
    r.argp_deg = argp_deg;
    r.raan_deg = raan_deg;
    r.mean_anomaly_deg = mean_anomaly_deg;
    r.epoch_mjd = epoch_mjd;
    r.mass_kg = mass_kg;
    r.moid_km = moid_km;
    r.validate();
    r.elements.a = a_au * kAuKm;
    r.elements.e = e;
    r.elements.i = i_deg * kDegToRad;
    r.elements.argp = orbit::normalize_angle(argp_deg * kDegToRad);
    r.elements.raan = orbit::normalize_angle(raan_deg * kDegToRad);
    r.elements.mean_anomaly = orbit::normalize_angle(mean_anomaly_deg * kDegToRad);
    r.elements.epoch = epoch_mjd - kMjdToMjd2000;
    r.elements.mu = kMuSun;
    return r;
}

void AsteroidRecord::validate() const {
    auto fail = [&](const std::string& what) {
        throw InvalidInput("asteroid " + std::to_string(id) + " (" + name + "): " + what);
    };
    if (id <= 0) fail("id must be positive");
    if (name.empty() || name.find(',') != std::string::npos) fail("name must be non-empty without commas");
    if (!(a_au > 0.7 && a_au < 3.1)) fail("semi-major axis outside (0.7, 3.1) AU");
    if (!(e >= 0.0 && e < 0.95)) fail("eccentricity outside [0, 0.95)");
    if (!(i_deg >= 0.0 && i_deg <= 180.0)) fail("inclination outside [0, 180] deg");
    if (!(mass_kg >= 1e7 && mass_kg <= 1e13)) fail("mass outside [1e7, 1e13] kg");
    for (double v : {argp_deg, raan_deg, mean_anomaly_deg, epoch_mjd}) {
        if (!std::isfinite(v)) fail("non-finite angle or epoch");
    }
    if (moid_km && !(*moid_km >= 0.0)) fail("negative MOID");
}

bool AsteroidRecord::operator==(const AsteroidRecord& o) const {
    return id == o.id && name == o.name && a_au == o.a_au && e == o.e && i_deg == o.i_deg &&
           argp_deg == o.argp_deg && raan_deg == o.raan_deg &&
           mean_anomaly_deg == o.mean_anomaly_deg && epoch_mjd == o.epoch_mjd &&
           mass_kg == o.mass_kg && moid_km == o.moid_km;
}

std::vector<AsteroidRecord> load_builtin_catalog() {
    std::vector<AsteroidRecord> out;
    out.reserve(kBuiltin.size());
    for (const Row& r : kBuiltin) {
        out.push_back(AsteroidRecord::make(r.id, r.name, r.a, r.e, r.i, r.argp, r.raan, r.m, r.epoch,
                                           r.mass, r.moid));
    }
    return out;
}

std::vector<AsteroidRecord> read_catalog(std::istream& in) {
    std::vector<AsteroidRecord> out;
    std::string line;
    int row = 0;
    bool header_seen = false;
    bool with_moid = false;
    while (std::getline(in, line)) {
        ++row;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const auto fields = split(view);
        if (!header_seen) {
            const std::size_t n = fields.size();
            with_moid = n == kColumns.size() + 1 && fields.back() == kMoidColumn;
            for (std::size_t k = 0; k < kColumns.size(); ++k) {
                if (k >= n || fields[k] != kColumns[k]) {
                    throw CatalogError("row " + std::to_string(row) + ": header is missing column '" +
                                           kColumns[k] + "'",
                                       row, kColumns[k]);
                }
            }
            if (n > kColumns.size() + (with_moid ? 1 : 0)) {
                throw CatalogError("row " + std::to_string(row) + ": unexpected header column '" +
                                       std::string(fields[kColumns.size()]) + "'",
                                   row);
            }
            header_seen = true;
            continue;
        }
        const std::size_t expected = kColumns.size() + (with_moid ? 1 : 0);
        if (fields.size() < expected) {
            const char* missing = fields.size() < kColumns.size() ? kColumns[fields.size()] : kMoidColumn;
            throw CatalogError("row " + std::to_string(row) + ": missing column '" + missing + "'", row,
                               missing);
        }
        if (fields.size() > expected) {
            throw CatalogError("row " + std::to_string(row) + ": too many columns", row);
        }
        std::optional<double> moid;
        if (with_moid && !fields.back().empty()) moid = parse_number<double>(fields.back(), row, kMoidColumn);
        try {
            out.push_back(AsteroidRecord::make(
                parse_number<int>(fields[0], row, kColumns[0]), std::string(fields[1]),
                parse_number<double>(fields[2], row, kColumns[2]),
                parse_number<double>(fields[3], row, kColumns[3]),
                parse_number<double>(fields[4], row, kColumns[4]),
                parse_number<double>(fields[5], row, kColumns[5]),
                parse_number<double>(fields[6], row, kColumns[6]),
                parse_number<double>(fields[7], row, kColumns[7]),
                parse_number<double>(fields[8], row, kColumns[8]),
                parse_number<double>(fields[9], row, kColumns[9]), moid));
        } catch (const CatalogError&) {
            throw;
        } catch (const InvalidInput& err) {
            throw CatalogError("row " + std::to_string(row) + ": " + err.what(), row);
        }
    }
    if (!header_seen) throw CatalogError("catalog has no header line", 0);
    std::vector<int> ids;
    for (const auto& r : out) ids.push_back(r.id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw CatalogError("catalog has duplicate ids", 0, "id");
    }
    return out;
}

std::vector<AsteroidRecord> read_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open catalog file: " + path);
    return read_catalog(in);
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

void write_catalog(std::ostream& out, std::span<const AsteroidRecord> records) {
    const bool with_moid =
        std::any_of(records.begin(), records.end(), [](const AsteroidRecord& r) { return r.moid_km.has_value(); });
    out << kCatalogHeader << (with_moid ? ",moid_km" : "") << '\n';
    for (const auto& r : records) {
        out << r.id << ',' << r.name;
        for (double v : {r.a_au, r.e, r.i_deg, r.argp_deg, r.raan_deg, r.mean_anomaly_deg, r.epoch_mjd,
                         r.mass_kg}) {
            out << ',' << format_double(v);
        }
        if (with_moid) out << ',' << (r.moid_km ? format_double(*r.moid_km) : std::string());
        out << '\n';
    }
}

void write_catalog_file(const std::string& path, std::span<const AsteroidRecord> records) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write catalog file: " + path);
    write_catalog(out, records);
}

const AsteroidRecord& find_record(std::span<const AsteroidRecord> records, int id) {
    for (const auto& r : records) {
        if (r.id == id) return r;
    }
    throw InvalidInput("unknown asteroid id " + std::to_string(id));
}

}  // namespace deflekt::catalog
