#pragma once

#include <cstdint>

namespace seqspace {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kJobSchema = "seqspace-job/1";
inline constexpr const char* kReportSchema = "seqspace-report/1";
inline constexpr const char* kVerifySchema = "seqspace-verify/1";
inline constexpr std::uint64_t kDefaultVerifySeed = 1729;

}  // namespace seqspace
