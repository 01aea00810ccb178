#include <gtest/gtest.h>

#include <sstream>

#include "runoff/runoff.hpp"

namespace runoff {
namespace {

TEST(ProfileIo, RoundTripsBitExactly) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ProfileSpace space{1 + static_cast<int>(seed % 6), 8, false, 1, seed, 9};
    const Profile p = sample_profile(space, seed);
    const std::string text = profile_to_string(p);
    const Profile q = profile_from_string(text);
    EXPECT_EQ(p, q);
    EXPECT_EQ(profile_to_string(q), text);
  }
}

TEST(ProfileIo, Format) {
  Profile p(3);
  p.add({2, 0, 1}, 4);
  EXPECT_EQ(profile_to_string(p), "3 1\n4: 2 > 0 > 1\n");
}

TEST(ProfileIo, SkipsCommentsAndBlankLines) {
  const Profile p = profile_from_string("# header\n\n2 2\n1: 0 > 1\n# mid\n3: 1 > 0\n");
  EXPECT_EQ(p.total_weight(), 4);
}

TEST(ProfileIo, RejectsMalformedInput) {
  EXPECT_THROW(profile_from_string(""), Error);
  EXPECT_THROW(profile_from_string("3 1\n1: 0 > 1\n"), Error);
  EXPECT_THROW(profile_from_string("3 2\n1: 0 > 1 > 2\n"), Error);
  EXPECT_THROW(profile_from_string("3 1\n0: 0 > 1 > 2\n"), Error);
  EXPECT_THROW(profile_from_string("3 1\n1: 0 > 0 > 2\n"), Error);
  EXPECT_THROW(profile_from_string("3 1\nx: 0 > 1 > 2\n"), Error);
  EXPECT_THROW(profile_from_string("3 1\n1 0 > 1 > 2\n"), Error);
}

TEST(ProfileIo, ReadsConsecutiveProfiles) {
  std::stringstream ss("2 1\n1: 0 > 1\n3 1\n2: 2 > 1 > 0\n");
  const auto v = read_profiles(ss);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].candidates(), 2);
  EXPECT_EQ(v[1].candidates(), 3);
  EXPECT_EQ(v[1].total_weight(), 2);
  std::stringstream again("2 1\n1: 0 > 1\n3 1\n2: 2 > 1 > 0\n");
  EXPECT_THROW(read_profile(again), Error);
}

}  // namespace
}  // namespace runoff
