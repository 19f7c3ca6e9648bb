#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "choicelab/catalog.hpp"

using namespace choicelab;

TEST_CASE("catalog has exactly 47 decisions") {
    CHECK(catalog_47().size() == 47);
}

TEST_CASE("first entry is the five-item forced choice") {
    const auto& first = catalog_47().front();
    REQUIRE(first.options.size() == 1);
    CHECK(first.chosen == 0);
    CHECK(option_letters(first.options[0]) == "dcbax");
}

TEST_CASE("every chosen option contains the target item") {
    for (const auto& d : catalog_47()) {
        bool has_x = false;
        for (Item it : d.options[d.chosen])
            if (it == Item::X) has_x = true;
        CHECK(has_x);
    }
}

TEST_CASE("all decisions validate and are structurally unique") {
    std::set<std::string> keys;
    for (const auto& d : catalog_47()) {
        validate_decision(d);
        // Normalize: sort letters within options, options as a key string.
        std::string key;
        for (const auto& opt : d.options) {
            std::string letters = option_letters(opt);
            std::sort(letters.begin(), letters.end());
            key += letters + "|";
        }
        CHECK(keys.insert(key).second);
    }
    CHECK(keys.size() == 47);
}

TEST_CASE("the bundle-versus-target decision is present") {
    bool found = false;
    for (const auto& d : catalog_47()) {
        if (d.options.size() != 2) continue;
        std::string a = option_letters(d.options[0]);
        std::string b = option_letters(d.options[1]);
        std::sort(b.begin(), b.end());
        if (a == "x" && b == "ab") found = true;
    }
    CHECK(found);
}

TEST_CASE("catalog export/import round trip") {
    std::ostringstream out;
    write_catalog(catalog_47(), out);
    std::istringstream in(out.str());
    auto back = read_catalog(in);
    REQUIRE(back.size() == 47);
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].chosen == catalog_47()[i].chosen);
        REQUIRE(back[i].options.size() == catalog_47()[i].options.size());
        for (std::size_t j = 0; j < back[i].options.size(); ++j)
            CHECK(option_letters(back[i].options[j]) ==
                  option_letters(catalog_47()[i].options[j]));
    }
}
