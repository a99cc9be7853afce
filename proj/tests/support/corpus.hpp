/* Copyright 2026 The dlprover Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef DLPROVER_TESTS_CORPUS_HPP
#define DLPROVER_TESTS_CORPUS_HPP

#include <vector>

namespace corpus {

inline const char* const kEscalator = "x>=2 & v>=0 -> [{{?x>1; x:=x-1;} ++ {x'=v}}*] x>=0";
inline const char* const kEscalatorAnnotated =
    "x>=2 & v>=0 -> [{{?x>1; x:=x-1;} ++ {x'=v}}*@invariant(x>0)] x>=0";
inline const char* const kGoldenScript =
    "implyR(1); andL(-1); loop(\"x>0\", 1); <(QE, QE, unfold; <(QE, ODE(1); QE))";

// Goals of the escalator proof and a few others, as sequents.
inline const std::vector<const char*>& sequents() {
    static const std::vector<const char*> goals{
        "==> x>=2 & v>=0 -> [{{?x>1; x:=x-1;} ++ {x'=v}}*] x>=0",
        "x>=2 & v>=0 ==> [{{?x>1; x:=x-1;} ++ {x'=v}}*] x>=0",
        "x>=2, v>=0 ==> [{{?x>1; x:=x-1;} ++ {x'=v}}*@invariant(x>0)] x>=0",
        "x>=2, v>=0 ==> x>0",
        "x>0 ==> x>=0",
        "x>0, v>=0 ==> [{?x>1; x:=x-1;} ++ {x'=v}]x>0",
        "x>0, v>=0, x>1 ==> x-1>0",
        "x>0, v>=0 ==> [{x'=v}]x>0",
        "==> x>0 & y>0 -> y>0 & x>0",
        "==> x>0 -> x>0",
        "==> true",
        "x>0 | y>0, !(z=1) ==> z=1 | x>0 <-> y>0",
        "==> [x:=1; y:=x+1; ?y>x;]y>=2",
        "==> [{x:=x+1;}*]x>=0",
        "y>0 ==> [{x'=2} ++ x:=5;]x>=5",
        "==> \\forall x (x>0 -> [x:=x-1;]x>=-1)",
        "x>=0 ==> [{x'=1 & x<=5}]x>=0",
        "==> x*x>=0",
    };
    return goals;
}

}  // namespace corpus

#endif
