#!/usr/bin/env python3
# Copyright 2026 The ipakit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes data/rules/ja.g2p from the kana tables below (hiragana + katakana)."""

import sys
from pathlib import Path

BASIC = {
    "あ": "a", "い": "i", "う": "ɯ", "え": "e", "お": "o",
    "か": "ka", "き": "ki", "く": "kɯ", "け": "ke", "こ": "ko",
    "が": "ɡa", "ぎ": "ɡi", "ぐ": "ɡɯ", "げ": "ɡe", "ご": "ɡo",
    "さ": "sa", "し": "ɕi", "す": "sɯ", "せ": "se", "そ": "so",
    "ざ": "za", "じ": "d͡ʑi", "ず": "zɯ", "ぜ": "ze", "ぞ": "zo",
    "た": "ta", "ち": "t͡ɕi", "つ": "t͡sɯ", "て": "te", "と": "to",
    "だ": "da", "ぢ": "d͡ʑi", "づ": "zɯ", "で": "de", "ど": "do",
    "な": "na", "に": "ɲi", "ぬ": "nɯ", "ね": "ne", "の": "no",
    "は": "ha", "ひ": "çi", "ふ": "ɸɯ", "へ": "he", "ほ": "ho",
    "ば": "ba", "び": "bi", "ぶ": "bɯ", "べ": "be", "ぼ": "bo",
    "ぱ": "pa", "ぴ": "pi", "ぷ": "pɯ", "ぺ": "pe", "ぽ": "po",
    "ま": "ma", "み": "mi", "む": "mɯ", "め": "me", "も": "mo",
    "や": "ja", "ゆ": "jɯ", "よ": "jo",
    "ら": "ɾa", "り": "ɾi", "る": "ɾɯ", "れ": "ɾe", "ろ": "ɾo",
    "わ": "wa", "ゐ": "i", "ゑ": "e", "を": "o", "ゔ": "vɯ",
    "ぁ": "a", "ぃ": "i", "ぅ": "ɯ", "ぇ": "e", "ぉ": "o",
    "ゃ": "ja", "ゅ": "jɯ", "ょ": "jo", "ゎ": "wa",
}

# i-row kana + small ya/yu/yo
YOON_ONSET = {
    "き": "kʲ", "ぎ": "ɡʲ", "し": "ɕ", "じ": "d͡ʑ", "ち": "t͡ɕ", "ぢ": "d͡ʑ",
    "に": "ɲ", "ひ": "ç", "び": "bʲ", "ぴ": "pʲ", "み": "mʲ", "り": "ɾʲ",
}
YOON_VOWEL = {"ゃ": "a", "ゅ": "ɯ", "ょ": "o"}

# mostly loanword spellings with small vowels
EXTENDED = {
    "ふぁ": "ɸa", "ふぃ": "ɸi", "ふぇ": "ɸe", "ふぉ": "ɸo",
    "てぃ": "ti", "でぃ": "di", "とぅ": "tɯ", "どぅ": "dɯ",
    "うぃ": "wi", "うぇ": "we", "うぉ": "wo", "いぇ": "je",
    "しぇ": "ɕe", "じぇ": "d͡ʑe", "ちぇ": "t͡ɕe",
    "つぁ": "t͡sa", "つぃ": "t͡si", "つぇ": "t͡se", "つぉ": "t͡so",
    "ゔぁ": "va", "ゔぃ": "vi", "ゔぇ": "ve", "ゔぉ": "vo",
}

ROWS = {
    "a": "あかがさざただなはばぱまやらわぁゃゎ",
    "i": "いきぎしじちぢにひびぴみりぃ",
    "u": "うくぐすずつづぬふぶぷむゆるぅゅゔ",
    "e": "えけげせぜてでねへべぺめれぇ",
    "o": "おこごそぞとどのほぼぽもよろをぉょ",
}

# small tsu: copy the next consonant
SOKUON = [
    ("かきくけこ", "k"), ("がぎぐげご", "ɡ"), ("さすせそ", "s"), ("し", "ɕ"),
    ("ざずぜぞ", "z"), ("じぢ", "d"), ("たちつてと", "t"), ("だづでど", "d"),
    ("はへほ", "h"), ("ひ", "ç"), ("ふ", "ɸ"), ("ばびぶべぼ", "b"),
    ("ぱぴぷぺぽ", "p"), ("まみむめも", "m"), ("なぬねの", "n"), ("に", "ɲ"),
    ("らりるれろ", "ɾ"),
]

MORAIC_N = [
    ("まみむめもばびぶべぼぱぴぷぺぽ", "m"),
    ("に", "ɲ"),
    ("たちつてとだぢづでどなぬねのらりるれろざじずぜぞ", "n"),
    ("かきくけこがぎぐげご", "ŋ"),
]


def kata(s: str) -> str:
    return "".join(chr(ord(c) + 0x60) if "ぁ" <= c <= "ゖ" else c for c in s)


def both(chars: str) -> str:
    return "|".join(list(chars) + [kata(c) for c in chars])


def main() -> None:
    out = [
        "# Japanese, kana only (kanji must be converted to a reading first).",
        "# Generated by tools/make_ja_rules.py.",
        "",
    ]
    for row, chars in ROWS.items():
        out.append(f"::{row.upper()}ROW:: = {both(chars)}")
    out.append("")

    def emit(src: str, rhs: str, ctx: str = "") -> None:
        for s in (src, kata(src)):
            out.append(f"{s} -> {rhs}{' / ' + ctx if ctx else ''}")

    out.append("# long vowels")
    emit("あ", "ː", "::AROW:: _")
    emit("い", "ː", "::IROW:: _")
    emit("う", "ː", "(::UROW::|::OROW::) _")
    emit("え", "ː", "::EROW:: _")
    emit("お", "ː", "::OROW:: _")
    out.append("ー -> ː")
    out.append("")

    out.append("# moraic n")
    for chars, rhs in MORAIC_N:
        emit("ん", rhs, f"_ ({both(chars)})")
    emit("ん", "ɴ")
    out.append("")

    out.append("# geminates; word-final small tsu is a glottal stop")
    for chars, rhs in SOKUON:
        emit("っ", rhs, f"_ ({both(chars)})")
    emit("っ", "ʔ")
    out.append("")

    out.append("# contracted syllables")
    for onset, c in YOON_ONSET.items():
        for small, v in YOON_VOWEL.items():
            emit(onset + small, c + v)
    for src, rhs in EXTENDED.items():
        emit(src, rhs)
    out.append("")

    for src, rhs in BASIC.items():
        emit(src, rhs)

    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data/rules/ja.g2p"
    target.write_text("\n".join(out) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
