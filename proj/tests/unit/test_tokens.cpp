#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "sp/model/tokens.hpp"

using namespace sp;
using model::kEntId;
using model::kEntToken;
using model::kPadId;

TEST_CASE("hash vocabulary reserves pad and marker ids") {
  model::HashVocab vocab{64};
  CHECK(kPadId == 0);
  CHECK(vocab.id_of(kEntToken) == kEntId);
  for (const std::string& t : {"the", "kung", "fu", "[ENT]", "", "."}) {
    auto id = vocab.id_of(t);
    CHECK(id >= 2);
    CHECK(id < 64);
  }
}

TEST_CASE("hash ids are stable and deterministic") {
  model::HashVocab vocab{4096};
  CHECK(vocab.id_of("morpheus") == vocab.id_of("morpheus"));
  auto ids = vocab.ids_of({"i", "know", "kung", "fu", "."});
  CHECK(ids == vocab.ids_of({"i", "know", "kung", "fu", "."}));
  CHECK(ids.size() == 5);
}

TEST_CASE("distinct tokens spread over the id space") {
  model::HashVocab vocab{1u << 15};
  std::set<std::uint32_t> ids;
  for (int i = 0; i < 200; ++i) ids.insert(vocab.id_of("token" + std::to_string(i)));
  // A few collisions are fine; mass collapse is not.
  CHECK(ids.size() > 190);
}

TEST_CASE("dialogue tokens concatenate and lowercase") {
  ir::CharacterRecord record;
  record.dialogues = {"I know Kung Fu.", "Show me!"};
  CHECK(model::dialogue_tokens(record) ==
        std::vector<std::string>{"i", "know", "kung", "fu", ".", "show", "me", "!"});
}

TEST_CASE("scene tokens insert a marker before each mention") {
  ir::CharacterRecord record;
  record.scenes = {{"Neo watches Morpheus. Morpheus nods.", {2, 4}}};
  CHECK(model::scene_tokens(record) ==
        std::vector<std::string>{"neo", "watches", kEntToken, "morpheus", ".", kEntToken,
                                 "morpheus", "nods", "."});
}

TEST_CASE("scene tokens chain multiple scenes in order") {
  ir::CharacterRecord record;
  record.scenes = {{"Neo runs.", {0}}, {"Door opens. Neo enters.", {3}}};
  CHECK(model::scene_tokens(record) ==
        std::vector<std::string>{kEntToken, "neo", "runs", ".", "door", "opens", ".",
                                 kEntToken, "neo", "enters", "."});
}

TEST_CASE("duplicate mention offsets insert one marker") {
  ir::CharacterRecord record;
  record.scenes = {{"Neo runs.", {0, 0}}};
  CHECK(model::scene_tokens(record) ==
        std::vector<std::string>{kEntToken, "neo", "runs", "."});
}

TEST_CASE("truncation keeps the head of the stream") {
  std::vector<std::string> tokens = {"a", "b", "c", "d"};
  CHECK(model::truncate_tokens(tokens, 2) == std::vector<std::string>{"a", "b"});
  CHECK(model::truncate_tokens(tokens, 4) == tokens);
  CHECK(model::truncate_tokens(tokens, 99) == tokens);
  CHECK(model::truncate_tokens(tokens, 0).empty());
}
