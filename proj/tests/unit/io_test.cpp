#include <gtest/gtest.h>

#include <cmath>

#include "imreg/errors.hpp"
#include "imreg/io.hpp"

namespace imreg {
namespace {

TEST(Io, NonFiniteRealsBecomeNull) {
  EXPECT_TRUE(real(INFINITY).is_null());
  EXPECT_TRUE(real(NAN).is_null());
  EXPECT_EQ(real(0.25).get<double>(), 0.25);
}

TEST(Io, JointRoundTrip) {
  const JointPMF p = bsc_joint(0.1);
  const JointPMF q = joint_from_json(to_json(p));
  EXPECT_EQ(q.x_size(), 2u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(q.probs()[i], p.probs()[i]);
  EXPECT_THROW(joint_from_json(Json{{"x_size", 2}, {"y_size", 2}, {"probs", {1.0}}}), ShapeError);
  EXPECT_THROW(joint_from_json(Json{{"x_size", 2}}), ValidationError);
}

TEST(Io, Families) {
  EXPECT_EQ(family_from_json("cyclic", 5).size(), 5u);
  EXPECT_EQ(family_from_json("cyclic_subgroup:3", 6).size(), 3u);
  EXPECT_THROW(family_from_json("cyclic_subgroup:x", 6), ValidationError);
  EXPECT_THROW(family_from_json("mirror", 6), ValidationError);
  const Json explicit_family = Json::parse("[[0,1,2],[1,2,0]]");
  const TransformationFamily f = family_from_json(explicit_family, 3);
  EXPECT_EQ(to_json(f), explicit_family);
  EXPECT_THROW(family_from_json(Json::parse("[[0,0,1]]"), 3), ValidationError);
}

TEST(Io, Channels) {
  const ChannelPair bsc = channel_from_json(Json::parse(R"({"type":"bsc","crossover":0.2})"));
  EXPECT_DOUBLE_EQ(induced_joint(bsc.prior, bsc.dmc)(0, 1), 0.1);
  const ChannelPair joint = channel_from_json(
      Json::parse(R"({"type":"joint","x_size":2,"y_size":2,"probs":[0.4,0.1,0.1,0.4]})"));
  EXPECT_DOUBLE_EQ(induced_joint(joint.prior, joint.dmc)(1, 1), 0.4);
  const ChannelPair dmc = channel_from_json(Json::parse(
      R"({"type":"dmc","prior":[0.5,0.5],"kernel":[
            {"x_size":2,"y_size":2,"probs":[1,0,0,0]},
            {"x_size":2,"y_size":2,"probs":[0,0,0,1]}]})"));
  EXPECT_DOUBLE_EQ(induced_joint(dmc.prior, dmc.dmc)(0, 0), 0.5);
}

TEST(Io, ReportsCarryNullForInfiniteRate) {
  const JointPMF p = bsc_joint(0.1);
  const Json j = to_json(rate_function(p, max_info_density(p)));
  EXPECT_TRUE(j["lambda_star"].is_null());
  EXPECT_TRUE(j["lambda_star_infinite"].get<bool>());
}

}  // namespace
}  // namespace imreg
