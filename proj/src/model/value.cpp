#include "aurakit/model/value.hpp"

#include "aurakit/core/text.hpp"

namespace aurakit::model {

std::string value_type_name(ValueType t) {
    switch (t) {
        case ValueType::int_type: return "int";
        case ValueType::real: return "real";
        case ValueType::text: return "text";
        case ValueType::boolean: return "bool";
        case ValueType::choice: return "choice";
    }
    return "?";
}

std::string Value::str() const {
    if (is_int()) return std::to_string(as_int());
    if (is_real()) return fmt_double(std::get<double>(v_));
    if (is_bool()) return as_bool() ? "true" : "false";
    return as_text();
}

}  // namespace aurakit::model
