#include "leobeam/link_budget.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "leobeam/constants.hpp"
#include "leobeam/errors.hpp"

namespace leobeam::linkbudget {

void validate(const LinkBudgetConfig& cfg) {
    std::vector<std::string> issues;
    if (!(cfg.distance_km > 0.0)) {
        issues.push_back("distance_km must be > 0, got " + std::to_string(cfg.distance_km));
    }
    if (!(cfg.frequency_hz > 0.0)) {
        issues.push_back("frequency_hz must be > 0, got " +
                         std::to_string(cfg.frequency_hz));
    }
    if (!(cfg.atmospheric_loss_db >= 0.0)) {
        issues.push_back("atmospheric_loss_db must be >= 0, got " +
                         std::to_string(cfg.atmospheric_loss_db));
    }
    if (!(cfg.tx_loss_db >= 0.0)) {
        issues.push_back("tx_loss_db must be >= 0, got " + std::to_string(cfg.tx_loss_db));
    }
    if (!(cfg.rx_loss_db >= 0.0)) {
        issues.push_back("rx_loss_db must be >= 0, got " + std::to_string(cfg.rx_loss_db));
    }
    if (!std::isfinite(cfg.eirp_dbw)) issues.push_back("eirp_dbw must be finite");
    if (!std::isfinite(cfg.rx_antenna_gain_dbi)) {
        issues.push_back("rx_antenna_gain_dbi must be finite");
    }
    if (!std::isfinite(cfg.sensitivity_dbm)) {
        issues.push_back("sensitivity_dbm must be finite");
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
}

double fspl_db(double distance_m, double frequency_hz) {
    std::vector<std::string> issues;
    if (!(distance_m > 0.0)) {
        issues.push_back("distance_m must be > 0, got " + std::to_string(distance_m));
    }
    if (!(frequency_hz > 0.0)) {
        issues.push_back("frequency_hz must be > 0, got " + std::to_string(frequency_hz));
    }
    if (!issues.empty()) throw validation_error(std::move(issues));
    return 20.0 * std::log10(4.0 * constants::pi * distance_m * frequency_hz /
                             constants::speed_of_light_m_s);
}

double received_power_dbm(const LinkBudgetConfig& cfg) {
    validate(cfg);
    const double eirp_dbm = cfg.eirp_dbw + 30.0;
    return eirp_dbm - fspl_db(cfg.distance_km * 1000.0, cfg.frequency_hz) -
           cfg.atmospheric_loss_db - cfg.tx_loss_db - cfg.rx_loss_db +
           cfg.rx_antenna_gain_dbi;
}

double link_margin_db(double received_dbm, double sensitivity_dbm, double enhancement_db) {
    return received_dbm + enhancement_db - sensitivity_dbm;
}

} // namespace leobeam::linkbudget
