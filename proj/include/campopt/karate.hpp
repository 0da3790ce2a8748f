// Copyright 2026 The camp-opt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAMPOPT_KARATE_HPP_
#define CAMPOPT_KARATE_HPP_

#include <string_view>

namespace campopt {

// Zachary's karate club: the classic 34-member friendship network with 78
// undirected ties. Mirrors data/karate.edges; the CLI keyword "karate"
// resolves here so runs do not depend on the working directory.
inline constexpr std::string_view kKarateEdgeList =
    "# Zachary karate club network (undirected, 34 nodes, 78 edges).\n"
    "0 1\n"
    "0 2\n"
    "0 3\n"
    "0 4\n"
    "0 5\n"
    "0 6\n"
    "0 7\n"
    "0 8\n"
    "0 10\n"
    "0 11\n"
    "0 12\n"
    "0 13\n"
    "0 17\n"
    "0 19\n"
    "0 21\n"
    "0 31\n"
    "1 2\n"
    "1 3\n"
    "1 7\n"
    "1 13\n"
    "1 17\n"
    "1 19\n"
    "1 21\n"
    "1 30\n"
    "2 3\n"
    "2 7\n"
    "2 8\n"
    "2 9\n"
    "2 13\n"
    "2 27\n"
    "2 28\n"
    "2 32\n"
    "3 7\n"
    "3 12\n"
    "3 13\n"
    "4 6\n"
    "4 10\n"
    "5 6\n"
    "5 10\n"
    "5 16\n"
    "6 16\n"
    "8 30\n"
    "8 32\n"
    "8 33\n"
    "9 33\n"
    "13 33\n"
    "14 32\n"
    "14 33\n"
    "15 32\n"
    "15 33\n"
    "18 32\n"
    "18 33\n"
    "19 33\n"
    "20 32\n"
    "20 33\n"
    "22 32\n"
    "22 33\n"
    "23 25\n"
    "23 27\n"
    "23 29\n"
    "23 32\n"
    "23 33\n"
    "24 25\n"
    "24 27\n"
    "24 31\n"
    "25 31\n"
    "26 29\n"
    "26 33\n"
    "27 33\n"
    "28 31\n"
    "28 33\n"
    "29 32\n"
    "29 33\n"
    "30 32\n"
    "30 33\n"
    "31 32\n"
    "31 33\n"
    "32 33\n";

}  // namespace campopt

#endif  // CAMPOPT_KARATE_HPP_
