#include "semmap/fixture.hpp"

#include <array>
#include <utility>

namespace semmap::fixtures {

namespace {

constexpr std::string_view kCsv = R"csv(language,gram,AF,SU,RE,CO,GD,DE,IS,CD,DC,PT,SC,WH,SE,SD,IC,UE,BL,DS
ZH,还,0,1,1,1,1,1,1,1,1,1,0,0,0,0,0,1,1,0
ZH,又,0,1,1,0,0,0,1,0,0,0,0,0,0,0,1,0,0,1
ZH,也,1,1,0,0,0,0,0,1,1,1,1,0,0,1,0,0,1,0
ZH,在,0,1,1,1,1,0,1,0,0,0,0,1,1,0,0,0,0,0
BO,ra,1,1,0,0,0,0,0,1,0,1,1,0,0,0,0,0,0,0
BO,tarong,0,0,1,1,0,0,0,1,0,0,0,0,0,0,0,0,0,1
EN,also,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0
EN,too,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0
EN,again,0,1,1,0,0,0,1,0,0,0,0,0,0,0,0,0,0,1
EN,still,0,0,0,1,1,1,0,1,1,0,0,0,0,0,0,0,1,0
DE,auch,1,1,0,0,0,0,0,1,0,1,1,0,0,1,0,0,0,0
DE,noch,0,1,1,1,1,1,0,1,1,0,0,1,0,0,0,1,1,0
FR,aussi,1,1,0,0,0,0,0,0,0,0,0,1,0,0,0,0,0,0
FR,encore,0,1,1,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0
RU,tbzhe,1,1,0,0,0,0,0,1,0,0,0,0,0,0,0,0,0,0
RU,opyat,0,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0
JA,も,1,1,0,0,0,0,0,1,0,1,0,0,0,0,0,0,0,0
JA,また,0,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0
JA,なお,0,0,0,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0
KO,도,1,1,0,0,0,0,0,1,1,1,0,0,0,0,0,0,0,0
KO,더,0,0,0,0,1,0,0,0,0,0,0,0,0,0,0,0,0,0
KO,또,0,1,1,0,0,0,0,0,0,0,0,0,0,0,1,0,0,1
KO,다시,0,0,1,0,0,0,1,0,0,0,0,0,0,0,0,0,0,0
KO,아직,0,0,0,1,0,1,0,0,0,0,0,0,0,0,0,0,0,0
VI,cũng,1,0,0,0,0,0,0,1,1,1,0,0,0,0,0,1,1,0
VI,nữa,0,1,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0
VI,còn,0,0,1,1,1,0,0,1,0,1,0,0,0,0,0,0,0,0
VI,lại,0,1,1,0,0,0,1,0,0,0,0,0,0,0,1,0,0,0
)csv";

// The source table has an "IS" column with no long name and prints "SC"
// twice; the second one is the sequential coordinator.
constexpr std::array<std::pair<std::string_view, std::string_view>, 18>
    kFullNames = {{
        {"AF", "Additive Focus"},
        {"SU", "Supplement"},
        {"RE", "Repetition"},
        {"CO", "Continuation"},
        {"GD", "Greater Degree"},
        {"DE", "Decrement"},
        {"IS", "Unspecified"},
        {"CD", "Condition"},
        {"DC", "Discretional Condition"},
        {"PT", "Polarity Trigger"},
        {"SC", "Serious Condition"},
        {"WH", "Whatever"},
        {"SE", "Sequence"},
        {"SD", "Sequential Coordinator"},
        {"IC", "Inconsistency"},
        {"UE", "Unexpectedness"},
        {"BL", "Bottom Line"},
        {"DS", "Discourse Continuation"},
    }};

FormFunctionMatrix build() {
  auto parsed = parse_matrix(kCsv, MatrixFormat::kCsv);
  auto functions = parsed.functions();
  for (auto& label : functions) {
    for (const auto& [abbr, full] : kFullNames) {
      if (label.abbr == abbr) label.full = std::string(full);
    }
  }
  return FormFunctionMatrix(std::move(functions), parsed.forms());
}

}  // namespace

std::string_view supplement_adverbs_csv() { return kCsv; }

const FormFunctionMatrix& supplement_adverbs() {
  static const FormFunctionMatrix matrix = build();
  return matrix;
}

}  // namespace semmap::fixtures
