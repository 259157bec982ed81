#pragma once

// Published example sequences, copied verbatim.

#include <string>
#include <vector>

namespace golden {

using Seq = std::vector<std::string>;

inline const Seq g21{"00", "01", "11", "10"};
inline const Seq g31{"000", "001", "011", "010", "110", "111", "101", "100"};

inline const Seq h31_p3{"000", "001", "002", "012", "011", "010", "020", "021", "022",
                        "122", "121", "120", "110", "111", "112", "102", "101", "100",
                        "200", "201", "202", "212", "211", "210", "220", "221", "222"};

inline const Seq h32_p3{"000", "101", "202", "012", "111", "210", "020", "121", "222",
                        "100", "201", "002", "112", "211", "010", "120", "221", "022",
                        "200", "001", "102", "212", "011", "110", "220", "021", "122"};

inline const Seq gamma21{"00", "10", "11", "01"};
inline const Seq rho21{"10", "00", "01", "11"};
inline const Seq gamma31{"000", "100", "101", "111", "110", "010", "011", "001"};
inline const Seq rho31{"100", "000", "001", "011", "010", "110", "111", "101"};

inline const Seq gamma53{
    "00000", "11100", "00101", "11111", "00110", "11010", "00011", "11001",
    "01100", "10000", "01001", "10011", "01010", "10110", "01111", "10101",
    "11000", "00100", "11101", "00111", "11110", "00010", "11011", "00001",
    "10100", "01000", "10001", "01011", "10010", "01110", "10111", "01101"};

inline const Seq gamma64_even_head{"000000", "111100"};
inline const Seq gamma64_odd_head{"100000", "011100"};

}  // namespace golden
