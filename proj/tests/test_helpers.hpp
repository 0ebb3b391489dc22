#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "sfscert/triangulation.hpp"

inline std::string fixture_path(const std::string& name) { return std::string(SFSCERT_FIXTURES) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline sfscert::Triangulation load_tri(const std::string& name) { return sfscert::parse_triangulation(read_fixture(name)); }
