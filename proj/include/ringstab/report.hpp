#pragma once

#include <string>

// Only the ordered flavor is used so --json output is byte-stable.
#include <json.hpp>

#include "ringstab/criteria.hpp"
#include "ringstab/synthesis.hpp"

namespace ringstab {

using Json = nlohmann::ordered_json;

Json json_ring(const Ring& ring);
Json json_ideal(const Ideal& ideal);
Json json_minors(const std::map<IndexSet, RingElement>& minors);
Json json_frac_matrix(const FracMatrix& m);
Json json_report(const StabilizabilityReport& report);
Json json_certificate(const ControllerCertificate& cert);
Json json_cross_checks(const CrossCheckReport& report);
Json json_product_check(const ProductCheckReport& report);

std::string text_report(const StabilizabilityReport& report);
std::string text_certificate(const ControllerCertificate& cert);
std::string text_cross_checks(const CrossCheckReport& report);
std::string text_product_check(const ProductCheckReport& report);
std::string witness_line(const StabilizabilityReport& report);

}  // namespace ringstab
