#include <doctest.h>

#include <fstream>
#include <sstream>

#include "copri/parser.hpp"

using namespace copri;
using namespace copri::cml;

namespace {

std::string fixture(const std::string& name) {
    std::string path = std::string(COPRI_FIXTURES_DIR) + "/" + name;
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "cannot open ", path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("tokenizer basics") {
    std::vector<Diagnostic> diags;
    auto tokens = tokenize("role Nurse \"a label\" { } [ , ] // trailing comment\nagent", "t.cml",
                           diags);
    CHECK(diags.empty());
    REQUIRE(tokens.size() == 10);  // 9 tokens + End
    CHECK(tokens[0].type == TokenType::Word);
    CHECK(tokens[0].text == "role");
    CHECK(tokens[2].type == TokenType::String);
    CHECK(tokens[2].text == "a label");
    CHECK(tokens[3].type == TokenType::Punct);
    CHECK(tokens[8].text == "agent");
    CHECK(tokens[8].span.line == 2);
    CHECK(tokens.back().type == TokenType::End);
}

TEST_CASE("tokenizer escapes and errors") {
    SUBCASE("escaped quote and backslash") {
        std::vector<Diagnostic> diags;
        auto tokens = tokenize(R"(goal G "say \"hi\" \\")", "t.cml", diags);
        CHECK(diags.empty());
        CHECK(tokens[2].text == "say \"hi\" \\");
    }
    SUBCASE("unterminated string") {
        std::vector<Diagnostic> diags;
        tokenize("role R \"no end\nrole S", "t.cml", diags);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].code == "UnterminatedString");
        CHECK(diags[0].span.line == 1);
    }
    SUBCASE("illegal character") {
        std::vector<Diagnostic> diags;
        tokenize("role R;", "t.cml", diags);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].code == "IllegalCharacter");
    }
}

TEST_CASE("a small model parses into the expected graph") {
    const char* text = R"(
model "mini"
role Caregiver
role Nurse "the nurse" is_a Caregiver
agent Sarah plays Nurse
agent Jack
goal Top aimedBy Jack { or [ AskHelp, SelfCare ] }
goal AskHelp
goal SelfCare
info Vitals "vitals" personal { owner Jack sensitivity C }
info Weather public
use AskHelp read Vitals { need optional }
permission P1 read over Vitals heldBy Nurse
)";
    ParseResult r = parse_model(text, "mini.cml");
    REQUIRE_MESSAGE(r.ok(), (r.diagnostics.empty() ? std::string("no diagnostics")
                                                   : format_diagnostic(r.diagnostics[0])));
    const ModelGraph& g = *r.graph;

    CHECK(g.name() == "mini");
    CHECK(g.node_kind("Weather") == NodeKind::PublicInformation);
    CHECK(g.find_element("Nurse")->label == "the nurse");
    CHECK(g.out_edges("Top", EdgeKind::OrDecomposed).size() == 2);
    CHECK(g.owner_of("Vitals") == std::optional<std::string>("Jack"));
    CHECK(g.find_element("Vitals")->sensitivity == SensitivityLevel::Confidential);

    REQUIRE(g.uses().size() == 1);
    CHECK(g.uses()[0].need == NeedToUse::Optional);
    CHECK(g.uses()[0].purpose == PurposeOfUse::Compatible);  // default
    CHECK(g.permissions().at("P1").holder.id == "Nurse");
}

TEST_CASE("use defaults are required and compatible") {
    ParseResult r = parse_model(
        "agent A\ngoal G aimedBy A\ninfo I personal { owner A sensitivity R }\nuse G read I\n",
        "t.cml");
    REQUIRE(r.ok());
    CHECK(r.graph->uses()[0].need == NeedToUse::Require);
    CHECK(r.graph->uses()[0].purpose == PurposeOfUse::Compatible);
}

TEST_CASE("parse errors recover at the next statement") {
    const char* text = R"(
role R1
bogus something
role R2
info I3
role R3
)";
    std::vector<Diagnostic> diags;
    auto tokens = tokenize(text, "t.cml", diags);
    Ast ast = parse(tokens, diags);
    REQUIRE(diags.size() == 2);
    CHECK(diags[0].code == "UnknownKeyword");
    CHECK(diags[0].span.line == 3);
    CHECK(diags[1].code == "MissingClause");  // info without personal/public,
    CHECK(diags[1].span.line == 6);           // noticed at the next declaration
    // all three roles survived the recovery
    CHECK(ast.statements.size() == 3);
}

TEST_CASE("model header must come first") {
    ParseResult r = parse_model("role R\nmodel \"late\"\n", "t.cml");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].message.find("first statement") != std::string::npos);
}

TEST_CASE("threat statements require an impact clause") {
    ParseResult r = parse_model(
        "agent A\n"
        "info I personal { owner A sensitivity R }\n"
        "threat incidental T { threatens I probability L }\n",
        "t.cml");
    REQUIRE_FALSE(r.ok());
    CHECK(r.diagnostics[0].code == "MissingClause");
}

TEST_CASE("unresolved names carry the reference position") {
    ParseResult r = parse_model("goal G aimedBy Nobody\n", "t.cml");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == "UnresolvedReference");
    CHECK(r.diagnostics[0].span.line == 1);
    CHECK(r.diagnostics[0].span.column == 16);
}

TEST_CASE("pretty printing round-trips every statement form") {
    const char* text = R"(model "roundtrip"
role Caregiver
role Nurse "the nurse" is_a Caregiver
agent Sarah "nurse on duty" plays Nurse, Caregiver
agent Loner
goal Top aimedBy Sarah { and [ A1, A2 ] }
goal A1 { or [ A2 ] }
goal A2 "leaf"
info Vitals "vitals" personal { owner Sarah sensitivity T }
info Pulse personal { owner Sarah sensitivity R } partOf Vitals
info Weather "public data" public
use Top produce Weather
use A1 read Vitals { need optional purpose incompatible }
use A2 collect Pulse { purpose compatible }
use A2 modify Pulse { need required }
permission P1 modify over Pulse heldBy Nurse
provision Prov1 of Vitals from Sarah to Loner nonconfidential
delegate permission D1 from Sarah to Loner of P1
delegate goal D2 from Loner to Sarah of A2
adopt Loner D1
trust TR1 from Sarah to Loner on permission P1 level distrust
monitor M1 by Sarah of Loner on goal A2
vulnerability V1 "weak spot" on Pulse, Vitals
attackmethod AM1 "brute force"
threat intentional T1 "spying" { threatens Pulse, Vitals exploits V1 actor Loner method AM1 impact severity H over Pulse impact severity L over Vitals }
threat incidental T2 { threatens Pulse probability M impact severity M over Pulse }
privacygoal PG1 "keep it quiet" mitigates V1 realizedBy PC1, POL1
policy POL1 "data handling policy"
mechanism PC1 capability unlink appliedTo Pulse
mechanism PC2 "noop" capability other
requirement unlinkability REQ1 concerning Pulse interpretedBy PG1
requirement notice REQ2 concerning Vitals
describes Pulse Top
situation Home determines Pulse R
)";
    std::vector<Diagnostic> diags;
    auto tokens = tokenize(text, "t.cml", diags);
    REQUIRE(diags.empty());
    Ast ast = parse(tokens, diags);
    REQUIRE_MESSAGE(diags.empty(), format_diagnostic(diags[0]));

    std::string printed = pretty_print(ast);
    std::vector<Diagnostic> diags2;
    auto tokens2 = tokenize(printed, "t2.cml", diags2);
    Ast ast2 = parse(tokens2, diags2);
    REQUIRE_MESSAGE(diags2.empty(), format_diagnostic(diags2[0]));
    CHECK(ast == ast2);
    // and printing is a fixed point
    CHECK(pretty_print(ast2) == printed);
}

TEST_CASE("fixture files round-trip through the pretty printer") {
    for (const char* name : {"aal.cml", "aal_baseline.cml", "aal_observable_location.cml"}) {
        CAPTURE(name);
        std::string text = fixture(name);
        std::vector<Diagnostic> diags;
        Ast ast = parse(tokenize(text, name, diags), diags);
        REQUIRE(diags.empty());
        std::vector<Diagnostic> diags2;
        Ast again = parse(tokenize(pretty_print(ast), name, diags2), diags2);
        REQUIRE(diags2.empty());
        CHECK(ast == again);
    }
}

TEST_CASE("parse_model reports tokenizer, parser, and resolver errors together sorted") {
    ParseResult r = parse_model("goal G aimedBy Ghost\nrole R ;\n", "t.cml");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 2);
    CHECK(r.diagnostics[0].span.line == 1);  // unresolved Ghost
    CHECK(r.diagnostics[1].span.line == 2);  // illegal character
}
