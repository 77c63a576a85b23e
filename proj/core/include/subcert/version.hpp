#pragma once

namespace subcert {

inline constexpr const char* version_string = "0.1.0";
inline constexpr const char* report_schema = "subcert-report/1";

}  // namespace subcert
