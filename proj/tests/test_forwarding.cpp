/* Copyright (c) 2026, PPTP Simulator Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 the "License";
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "chain.hpp"
#include "support.hpp"

#include "pptp/core/error.hpp"
#include "pptp/core/signing.hpp"
#include "pptp/forwarding/forwarder.hpp"

#include <doctest.h>

#include <algorithm>

using namespace pptp;
using fw::Forwarder;
using fw::Role;
using test::Chain;

namespace {

const Name kVideo = Name::parse("/video");

Packet
probeFor(const std::string& uri, std::uint64_t nonce)
{
  Packet p;
  p.name = Name::parse(uri);
  p.nonce = nonce;
  p.probe = true;
  return p;
}

/// Router R with faces f1 -> C and then one face per listed neighbour.
Forwarder
fanout(std::size_t width)
{
  Forwarder r(NodeId{"R"}, Role::Router, derive_keypair(0, "R"));
  r.add_face(NodeId{"C"});
  std::vector<FaceId> faces;
  for (std::size_t i = 0; i < width; ++i) {
    faces.push_back(r.add_face(NodeId{"N" + std::to_string(i)}));
  }
  r.fib().insert(kVideo, faces);
  return r;
}

Errc
codeOf(const std::function<void()>& fn)
{
  try {
    fn();
  }
  catch (const Error& e) {
    return e.code();
  }
  FAIL("expected pptp::Error");
  return Errc::InvalidArgument;
}

} // namespace

TEST_SUITE("round robin")
{
  TEST_CASE("three faces in order, then again")
  {
    Forwarder r(NodeId{"R"}, Role::Router, derive_keypair(0, "R"));
    FaceId f1 = r.add_face(NodeId{"A"});
    FaceId f2 = r.add_face(NodeId{"B"});
    FaceId f3 = r.add_face(NodeId{"D"});
    r.fib().insert(kVideo, {f1, f2, f3});
    const Name n = Name::parse("/video/x");
    CHECK(r.probe_next_face(n) == f1);
    CHECK(r.probe_next_face(n) == f2);
    CHECK(r.probe_next_face(n) == f3);

    std::map<FaceId, int> seen;
    for (int i = 0; i < 6; ++i) {
      ++seen[r.probe_next_face(n)];
    }
    CHECK(seen[f1] == 2);
    CHECK(seen[f2] == 2);
    CHECK(seen[f3] == 2);
  }

  TEST_CASE("no matching entry")
  {
    Forwarder r = fanout(2);
    CHECK(codeOf([&] { r.probe_next_face(Name::parse("/audio/1")); }) == Errc::NoRoute);
  }

  TEST_CASE("arrival face is skipped")
  {
    Forwarder r(NodeId{"R"}, Role::Router, derive_keypair(0, "R"));
    FaceId f1 = r.add_face(NodeId{"A"});
    FaceId f2 = r.add_face(NodeId{"B"});
    r.fib().insert(kVideo, {f1, f2});
    for (int i = 0; i < 4; ++i) {
      CHECK(r.probe_next_face(kVideo, f1) == f2);
    }
    r.fib().insert(kVideo, {f1});
    CHECK(codeOf([&] { r.probe_next_face(kVideo, f1); }) == Errc::NoRoute);
  }

  TEST_CASE("longest prefix wins")
  {
    Forwarder r(NodeId{"R"}, Role::Router, derive_keypair(0, "R"));
    FaceId f1 = r.add_face(NodeId{"A"});
    FaceId f2 = r.add_face(NodeId{"B"});
    r.fib().insert(kVideo, {f1});
    r.fib().insert(Name::parse("/video/hd"), {f2});
    CHECK(r.probe_next_face(Name::parse("/video/hd/1")) == f2);
    CHECK(r.probe_next_face(Name::parse("/video/sd/1")) == f1);
  }

  TEST_CASE("fairness over random widths")
  {
    Rng rng(17);
    for (int round = 0; round < 50; ++round) {
      const std::size_t width = 1 + rng.below(6);
      const std::size_t n = 1 + rng.below(10);
      Forwarder r = fanout(width);
      std::map<FaceId, std::size_t> seen;
      for (std::size_t i = 0; i < n * width; ++i) {
        ++seen[r.probe_next_face(kVideo, FaceId{1})];
      }
      CHECK(seen.size() == width);
      for (const auto& [face, count] : seen) {
        CHECK(count == n);
      }
    }
  }
}

TEST_SUITE("on_interest")
{
  TEST_CASE("probe is relayed round robin and leaves a PIT entry")
  {
    Forwarder r = fanout(2);
    test::Keyring ring;
    fw::ForwardingContext ctx{ring};
    auto a = r.on_interest(FaceId{1}, probeFor("/video/a", 1), 0, ctx);
    REQUIRE(a.forwarded());
    CHECK(a.face == FaceId{2});
    CHECK(r.pit().contains(Name::parse("/video/a"), 1));
    auto b = r.on_interest(FaceId{1}, probeFor("/video/a", 2), 0, ctx);
    CHECK(b.face == FaceId{3});
    CHECK(r.pit().size() == 2);
  }

  TEST_CASE("duplicate nonce is dropped")
  {
    Forwarder r = fanout(2);
    test::Keyring ring;
    fw::ForwardingContext ctx{ring};
    r.on_interest(FaceId{1}, probeFor("/video/a", 1), 0, ctx);
    auto again = r.on_interest(FaceId{2}, probeFor("/video/a", 1), 0, ctx);
    CHECK_FALSE(again.forwarded());
    CHECK(again.reason == Errc::PitDuplicate);
    CHECK(r.counters().drops.at(Errc::PitDuplicate) == 1);
  }

  TEST_CASE("probe without a route is discarded and counted")
  {
    Forwarder r = fanout(2);
    test::Keyring ring;
    fw::ForwardingContext ctx{ring};
    auto act = r.on_interest(FaceId{1}, probeFor("/audio/a", 1), 0, ctx);
    CHECK(act.reason == Errc::NoRoute);
    CHECK(r.pit().empty());
    CHECK(r.counters().total_drops() == 1);
  }

  TEST_CASE("content Interest follows the recorded face")
  {
    Chain chain({1, 3, 4, 2}, 3);
    Packet data = chain.probe(10);
    const auto& path = chain.engine.register_path(data, 10, chain.ledger);
    Packet interest = chain.engine.build_content_interest(path.id, kVideo, 0, chain.channels, chain.rng);
    auto walk = chain.walk(interest, 11);
    REQUIRE(walk.data);
    REQUIRE(walk.out_faces.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(walk.out_faces[i] == path.items[i].face);
    }
  }

  TEST_CASE("top item from another node is a tag mismatch")
  {
    Chain chain({1, 3}, 3);
    Packet data = chain.probe(10);
    const auto& path = chain.engine.register_path(data, 10, chain.ledger);
    Packet interest = chain.engine.build_content_interest(path.id, kVideo, 0, chain.channels, chain.rng);
    interest.tag->pop(); // R2's item is now on top but R1 receives it
    auto walk = chain.walk(interest, 11);
    CHECK(walk.dropped == Errc::TagMismatch);
    CHECK(walk.dropped_at == "R1");
  }

  TEST_CASE("top item naming an unknown face is a tag mismatch")
  {
    Chain chain({1}, 3);
    Packet data = chain.probe(10);
    const auto& path = chain.engine.register_path(data, 10, chain.ledger);
    Packet interest = chain.engine.build_content_interest(path.id, kVideo, 0, chain.channels, chain.rng);
    TagItem top = interest.tag->pop();
    top.face = FaceId{9};
    interest.tag->push(top);
    auto walk = chain.walk(interest, 11);
    CHECK(walk.dropped == Errc::TagMismatch);
  }

  TEST_CASE("consumers do not transit")
  {
    Forwarder c(NodeId{"C"}, Role::Consumer, derive_keypair(0, "C"));
    test::Keyring ring;
    fw::ForwardingContext ctx{ring};
    CHECK(c.on_interest(FaceId{1}, probeFor("/video/a", 1), 0, ctx).reason == Errc::NotTransit);
  }
}

TEST_SUITE("on_data")
{
  TEST_CASE("probe Data gains an item for the arrival face")
  {
    Forwarder r = fanout(2);
    r.prices().set_price(FaceId{2}, Tokens(5), {0, 100}, PerfMetric{10, 2});
    test::Keyring ring;
    fw::ForwardingContext ctx{ring};
    r.on_interest(FaceId{1}, probeFor("/video/a", 1), 0, ctx);

    Packet data;
    data.kind = PacketKind::Data;
    data.name = Name::parse("/video/a");
    data.nonce = 1;
    data.probe = true;
    data.tag = PathTag{};
    data.tag->push(TagItem{NodeId{"P"}, FaceId{1}, Tokens(3), {0, kForever}, {}, {}});

    auto act = r.on_data(FaceId{2}, data, 5, ctx);
    REQUIRE(act.forwarded());
    CHECK(act.face == FaceId{1});
    REQUIRE(act.packet.tag->size() == 2);
    CHECK(act.packet.tag->top().advertiser == NodeId{"R"});
    CHECK(act.packet.tag->top().face == FaceId{2});
    CHECK(act.packet.tag->top().price == Tokens(5));
    CHECK(r.pit().empty());
  }

  TEST_CASE("unsolicited Data is dropped")
  {
    Forwarder r = fanout(1);
    test::Keyring ring;
    fw::ForwardingContext ctx{ring};
    Packet data;
    data.kind = PacketKind::Data;
    data.name = Name::parse("/video/a");
    data.nonce = 9;
    auto act = r.on_data(FaceId{2}, data, 0, ctx);
    CHECK(act.reason == Errc::NoPitEntry);
    CHECK(r.counters().drops.at(Errc::NoPitEntry) == 1);
  }

  TEST_CASE("router without an active price refuses the probe Data")
  {
    test::ChainOptions opt;
    opt.router_window = {0, 100};
    Chain chain({2}, 1, opt);
    auto walk = chain.walk(chain.engine.launch_probes(kVideo, 1, chain.rng).front(), 150);
    CHECK(walk.dropped == Errc::NoActivePrice);
    CHECK(walk.dropped_at == "R1");
  }

  TEST_CASE("tag length is routers plus one, popping in path order")
  {
    for (std::size_t k = 1; k <= 6; ++k) {
      std::vector<std::uint64_t> prices(k, 1);
      Chain chain(prices, 3);
      Packet data = chain.probe(0);
      REQUIRE(data.tag);
      CHECK(data.tag->size() == k + 1);
      PathTag tag = *data.tag;
      for (std::size_t i = 0; i < k; ++i) {
        CHECK(tag.pop().advertiser.value == chain.router(i));
      }
      CHECK(tag.pop().advertiser.value == "P");
    }
  }

  TEST_CASE("probe Data retraces the Interest")
  {
    Chain chain({1, 3, 4, 2}, 3);
    auto walk = chain.walk(chain.engine.launch_probes(kVideo, 1, chain.rng).front(), 0);
    REQUIRE(walk.data);
    std::vector<std::string> reversed(walk.interest_path.rbegin(), walk.interest_path.rend());
    CHECK(walk.data_path == reversed);
    for (const auto& id : chain.order) {
      if (id != "C") {
        CHECK(chain.at(id).pit().empty());
      }
    }
  }
}

TEST_SUITE("produce_data")
{
  TEST_CASE("probe for an owned prefix carries the producer's item")
  {
    Forwarder p(NodeId{"P"}, Role::Producer, derive_keypair(0, "P"));
    test::Keyring ring;
    ring.add("P");
    FaceId f = p.add_face(NodeId{"R"});
    p.add_content(kVideo);
    p.prices().set_price(f, Tokens(3), {0, kForever});
    Packet data = p.produce_data(probeFor("/video/1", 4), f, 0);
    REQUIRE(data.tag);
    REQUIRE(data.tag->size() == 1);
    CHECK(data.tag->top().price == Tokens(3));
    CHECK(data.tag->top().advertiser == NodeId{"P"});
    CHECK(verify_item(data.tag->top(), ring));
    CHECK(data.nonce == 4);
  }

  TEST_CASE("foreign prefix")
  {
    Forwarder p(NodeId{"P"}, Role::Producer, derive_keypair(0, "P"));
    FaceId f = p.add_face(NodeId{"R"});
    p.add_content(kVideo);
    p.prices().set_price(f, Tokens(3), {0, kForever});
    CHECK(codeOf([&] { p.produce_data(probeFor("/audio/1", 4), f, 0); }) == Errc::NoRoute);
  }

  TEST_CASE("residual cheque is the producer's revenue")
  {
    Chain chain({1, 3, 4, 2}, 3);
    Packet data = chain.probe(0);
    const auto& path = chain.engine.register_path(data, 0, chain.ledger);
    Packet interest = chain.engine.build_content_interest(path.id, kVideo, 0, chain.channels, chain.rng);
    auto walk = chain.walk(interest, 1);
    REQUIRE(walk.data);
    CHECK_FALSE(walk.data->tag);
    CHECK(chain.at("P").counters().kept == Tokens(3));
    CHECK(chain.channels.find(NodeId{"R4"}, NodeId{"P"})->balance_of(NodeId{"P"}) == Tokens(3));
  }
}

TEST_SUITE("pit")
{
  TEST_CASE("expiry removes due entries only")
  {
    fw::Pit pit;
    pit.insert({kVideo, 1, FaceId{1}, 0, 100});
    pit.insert({kVideo, 2, FaceId{1}, 50, 150});
    CHECK(codeOf([&] { pit.insert({kVideo, 2, FaceId{2}, 60, 160}); }) == Errc::PitDuplicate);
    CHECK(pit.expire(99) == 0);
    CHECK(pit.expire(100) == 1);
    CHECK(pit.size() == 1);
    CHECK(pit.take(kVideo, 2));
    CHECK(pit.empty());
    CHECK_FALSE(pit.take(kVideo, 2));
  }

  TEST_CASE("clean after content round trips")
  {
    Chain chain({2, 2, 2}, 1);
    Packet data = chain.probe(0);
    const auto& path = chain.engine.register_path(data, 0, chain.ledger);
    for (std::uint64_t seq = 0; seq < 20; ++seq) {
      auto walk = chain.walk(chain.engine.build_content_interest(path.id, kVideo, seq, chain.channels, chain.rng), seq);
      CHECK(walk.data);
    }
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(chain.at(chain.router(i)).pit().empty());
      CHECK(chain.at(chain.router(i)).counters().kept == Tokens(40));
    }
  }
}
