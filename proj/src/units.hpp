#pragma once

namespace dmec {

// Power: dBm <-> W. Ratios: dB <-> linear. Densities: per km^2 <-> per m^2.
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);
double linear_to_db(double ratio);
double per_km2_to_per_m2(double per_km2);
double per_m2_to_per_km2(double per_m2);

}  // namespace dmec
