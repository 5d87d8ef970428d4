#include "quiltlab/fixtures.hpp"

namespace quiltlab {

const std::vector<Fixture>& builtin_fixtures() {
  static const std::vector<Fixture> fixtures = {
      {"template_n0", R"(E=4
ROOT 4
7 1
4 0
5 3
0 2
6 5
2 4
1 7
3 6
MARKS 0 1 2 0
MARKS 1 1
MARKS 2 2 1
ORDER 1 0 2
)"},
      {"template_n2", R"(E=12
ROOT 17
11 1
17 0
5 3
0 2
12 5
2 4
1 7
14 6
4 9
20 8
7 11
3 10
8 13
19 12
10 15
22 14
9 17
6 16
15 19
13 18
16 21
23 20
18 23
21 22
MARKS 0 1 2 0
MARKS 1 1
MARKS 2 2 3 6 4
MARKS 3 8 1
MARKS 4 6 5 8 7
ORDER 1 0 2 4 3
)"},
      {"template_n21", R"(E=88
ROOT 169
11 1
169 0
5 3
0 2
65 5
2 4
1 7
174 6
4 9
76 8
27 11
3 10
25 13
19 12
10 15
22 14
12 17
44 16
15 19
13 18
33 21
23 20
18 23
21 22
20 25
16 24
35 27
14 26
36 29
31 28
26 31
29 30
28 33
24 32
99 35
30 34
32 37
43 36
34 39
94 38
17 41
57 40
91 43
37 42
40 45
51 44
42 47
86 46
41 49
68 48
67 51
45 50
60 53
59 52
50 55
62 54
52 57
48 56
55 59
53 58
56 61
63 60
58 63
61 62
49 65
8 64
75 67
54 66
64 69
71 68
66 71
69 70
9 73
84 72
83 75
70 74
72 77
79 76
74 79
77 78
73 81
113 80
47 83
78 82
80 85
87 84
82 87
85 86
81 89
124 88
39 91
46 90
105 93
95 92
90 95
93 94
92 97
116 96
115 99
38 98
108 101
107 100
98 103
110 102
100 105
96 104
103 107
101 106
104 109
111 108
106 111
109 110
97 113
88 112
131 115
102 114
112 117
123 116
114 119
126 118
89 121
145 120
119 123
117 122
120 125
127 124
122 127
125 126
121 129
161 128
139 131
118 130
140 133
135 132
130 135
133 134
132 137
148 136
155 139
134 138
136 141
147 140
138 143
150 142
137 145
128 144
143 147
141 146
144 149
151 148
146 151
149 150
129 153
172 152
171 155
142 154
164 157
163 156
154 159
166 158
156 161
152 160
159 163
157 162
160 165
167 164
162 167
165 166
153 169
6 168
7 171
158 170
168 173
175 172
170 175
173 174
MARKS 0 1 2 0
MARKS 1 1
MARKS 2 2 3 8 6
MARKS 3 65 1
MARKS 4 30 5 33 32
MARKS 5 8 7 12 9
MARKS 6 12 11 15 13
MARKS 7 17 10 21 20
MARKS 8 15 14 17 16
MARKS 9 38 37 42 40
MARKS 10 21 19 26 24
MARKS 11 35 34 38 18
MARKS 12 28 23 30 29
MARKS 13 26 25 28 27
MARKS 14 33 31 35 22
MARKS 15 46 36 49 47
MARKS 16 44 39 46 45
MARKS 17 42 41 44 43
MARKS 18 49 48 53 51
MARKS 19 58 50 62 60
MARKS 20 53 52 56 55
MARKS 21 56 54 58 57
MARKS 22 64 59 65 4
MARKS 23 62 61 64 63
ORDER 1 0 2 5 6 8 7 10 13 12 4 14 11 9 17 16 15 18 20 21 19 23 22 3
)"},
      {"two_hole_a", R"(E=16
ROOT 9
7 1
9 0
14 3
0 2
17 5
11 4
1 7
3 6
4 9
6 8
2 11
5 10
25 13
19 12
10 15
22 14
12 17
8 16
15 19
13 18
28 21
27 20
18 23
30 22
20 25
16 24
23 27
21 26
24 29
31 28
26 31
29 30
HOLE 3
HOLE 5
MARKS 0 1 4 0
MARKS 1 1
MARKS 2 11 1
MARKS 4 6 5 9 7
)"},
      {"two_hole_b", R"(E=12
ROOT 17
7 1
17 0
22 3
0 2
14 5
11 4
1 7
3 6
4 9
20 8
19 11
5 10
10 13
15 12
8 15
13 14
9 17
6 16
2 19
12 18
16 21
23 20
18 23
21 22
HOLE 2
HOLE 3
MARKS 0 1 4 0
MARKS 1 1
MARKS 4 7 5 8 2
)"},
      {"two_hole_c", R"(E=12
ROOT 17
19 1
17 0
12 3
0 2
14 5
11 4
1 7
22 6
4 9
20 8
2 11
5 10
10 13
15 12
8 15
13 14
9 17
6 16
7 19
3 18
16 21
23 20
18 23
21 22
HOLE 3
HOLE 4
MARKS 0 1 4 0
MARKS 1 1
MARKS 2 7 6 8 5
)"},
  };
  return fixtures;
}

const Fixture& builtin_fixture(const std::string& name) {
  for (const auto& f : builtin_fixtures()) {
    if (f.name == name) return f;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown fixture " + name);
}

}  // namespace quiltlab
