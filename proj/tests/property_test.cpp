#include <gtest/gtest.h>

#include "properties.hpp"

namespace {

using telic::testing::kernel_property_names;
using telic::testing::PropertyResult;
using telic::testing::run_kernel_property;

constexpr std::uint64_t kSeed = 20240611;

class KernelLaw : public ::testing::TestWithParam<std::size_t> {};

TEST_P(KernelLaw, HoldsOnGeneratedTerms) {
    PropertyResult r = run_kernel_property(GetParam(), kSeed, 1000);
    SCOPED_TRACE(r.name);
    EXPECT_GE(r.samples, r.name == "oplus index arithmetic" ? 441u : 1000u);
    EXPECT_EQ(r.failures, 0u) << "first failure: " << r.first_failure;
}

std::string law_name(const ::testing::TestParamInfo<std::size_t>& info) {
    std::string out;
    bool upper = true;
    const std::string name = kernel_property_names().at(info.param);
    for (char ch : name) {
        if (ch == ' ') {
            upper = true;
            continue;
        }
        out += upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(ch))) : ch;
        upper = false;
    }
    return out;
}

INSTANTIATE_TEST_SUITE_P(Kernel, KernelLaw, ::testing::Range<std::size_t>(0, kernel_property_names().size()),
                         law_name);

TEST(KernelLawRunner, SameSeedSameOutcome) {
    for (std::size_t i : {0u, 5u}) {
        PropertyResult a = run_kernel_property(i, 7, 50);
        PropertyResult b = run_kernel_property(i, 7, 50);
        EXPECT_EQ(a.samples, b.samples);
        EXPECT_EQ(a.failures, b.failures);
        EXPECT_EQ(a.first_failure, b.first_failure);
    }
}

TEST(KernelLawRunner, RejectsUnknownIndex) {
    EXPECT_THROW(run_kernel_property(kernel_property_names().size(), kSeed, 1), std::out_of_range);
}

}  // namespace
