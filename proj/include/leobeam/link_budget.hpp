#pragma once

namespace leobeam::linkbudget {

// Downlink budget for a single satellite-to-handset link. Defaults reproduce
// the 600 km / 3.5 GHz S-band reference budget. The EIRP already contains the
// transmit antenna gain; tx_antenna_gain_dbi is carried for reporting only and
// never re-added.
struct LinkBudgetConfig {
    double distance_km = 600.0;
    double frequency_hz = 3.5e9;
    double eirp_dbw = 36.7;
    double tx_antenna_gain_dbi = 37.1; // informational
    double rx_antenna_gain_dbi = 0.0;
    double atmospheric_loss_db = 5.0;  // atmosphere + rain
    double tx_loss_db = 2.0;
    double rx_loss_db = 2.0;
    double sensitivity_dbm = -96.5;    // handset reference sensitivity
};

void validate(const LinkBudgetConfig& cfg);

// Free-space path loss 20*log10(4*pi*d*f/c). Distance in metres.
double fspl_db(double distance_m, double frequency_hz);

// EIRP (converted to dBm) minus path and equipment losses plus receive gain.
double received_power_dbm(const LinkBudgetConfig& cfg);

// Margin over sensitivity once a beamforming enhancement is applied.
double link_margin_db(double received_dbm, double sensitivity_dbm,
                      double enhancement_db = 0.0);

} // namespace leobeam::linkbudget
