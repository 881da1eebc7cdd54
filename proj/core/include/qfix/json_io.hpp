#ifndef QFIX_JSON_IO_HPP
#define QFIX_JSON_IO_HPP

#include <qfix/bounds.hpp>
#include <qfix/circuits.hpp>
#include <qfix/elementary.hpp>
#include <qfix/fixed_point.hpp>
#include <qfix/resources.hpp>
#include <qfix/trace.hpp>

#include <json.hpp>

namespace qfix {

nlohmann::json to_json(const FixedPoint& x);
FixedPoint fixed_point_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BigRat& r);  // {"num": "...", "den": "..."}
BigRat rational_from_json(const nlohmann::json& j);

nlohmann::json to_json(const IterationTrace& t);
IterationTrace trace_from_json(const nlohmann::json& j);

nlohmann::json to_json(const rc::ReversibleCircuit& c);
rc::ReversibleCircuit circuit_from_json(const nlohmann::json& j);

nlohmann::json to_json(const bounds::ErrorBound& b);

nlohmann::json to_json(const res::ResourceEstimate& e);

}  // namespace qfix

#endif
