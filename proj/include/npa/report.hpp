#ifndef NPA_REPORT_HPP
#define NPA_REPORT_HPP

#include <json.hpp>

#include "npa/ad_analysis.hpp"
#include "npa/gr.hpp"
#include "npa/growth.hpp"
#include "npa/localization.hpp"

namespace npa {

// Reports preserve key insertion order so identical queries serialize to
// identical bytes.
using Json = nlohmann::ordered_json;

Json relation_json(const RelationStatus& st);
Json verdict_json(const TypeVerdict& v);
Json ev_report_json(const EvReport& r);
Json ad_report_json(const AdReport& r);
Json growth_json(const GrowthProfile& p);
Json independence_json(const IndependenceResult& r);
Json tensor_check_json(const TensorCheckReport& r);
Json torsion_json(const TorsionCheck& t);
Json gr_certificate_json(const GrCertificate& c);

std::string verdict_text(const TypeVerdict& v);
std::string ev_report_text(const EvReport& r);
std::string ad_report_text(const AdReport& r);

std::string grade_name(Grade g);
std::string relation_kind_name(RelationStatus::Kind k);

}  // namespace npa

#endif
