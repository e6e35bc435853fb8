#include "units.hpp"

#include <cmath>

namespace dmec {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

double per_km2_to_per_m2(double per_km2) { return per_km2 / 1e6; }

double per_m2_to_per_km2(double per_m2) { return per_m2 * 1e6; }

}  // namespace dmec
