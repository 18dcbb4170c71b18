#!/usr/bin/env python3
"""Regenerate the bundled demo fixture corpus under src/wikirisk/data/.

The corpus models 21 Wikipedia language editions over a three-month
window (2021-02..2021-05): site statistics, user-group counts,
governance counts, per-country view/edit/editor distributions, external
provider score tables, a curated operator data file and a per-country
democracy index.

The per-country shape of each wiki's traffic is what the diversity
analyses key on, so this script verifies the expected entropy orderings
(checked again by the test suite) before writing anything.  Output is
deterministic: fixed seed, sorted keys.
"""

from __future__ import annotations

import json
import math
import random
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "wikirisk" / "data"
WINDOW = {"start": "2021-02", "end": "2021-05"}
MONTHS = ["2021-02", "2021-03", "2021-04"]
MONTH_WEIGHTS = [0.32, 0.33, 0.35]
CAPTURED_AT = "2021-05-02T04:10:00Z"
SEED = 20210501

# Per-wiki country shares in permille; the generator normalizes, so only
# the relative shape matters.  Views and edits are separate because the
# reader and editor geographies of a wiki can diverge sharply (bot-built
# editions, diaspora-read editions).

VIEW_SHARES: dict[str, dict[str, int]] = {
    "en": {"US": 390, "GB": 130, "IN": 90, "CA": 55, "AU": 45, "PH": 20, "DE": 20, "NL": 12,
           "IE": 11, "SG": 10, "MY": 10, "PK": 10, "NG": 10, "ZA": 12, "NZ": 9, "SE": 8,
           "IT": 8, "FR": 12, "BR": 10, "ES": 8, "PL": 7, "JP": 12, "KE": 6, "BD": 6,
           "ID": 8, "MX": 8, "RU": 8, "CN": 7, "HK": 6, "KR": 6, "TR": 6, "IL": 5,
           "SA": 5, "AE": 5, "EG": 5, "TH": 5, "VN": 5, "AR": 5, "CO": 5, "CL": 4,
           "PT": 4, "GR": 4, "RO": 4, "CZ": 4, "FI": 4, "NO": 4, "DK": 4, "CH": 6, "AT": 4, "BE": 6},
    "ceb": {"PH": 830, "US": 60, "CA": 15, "SE": 12, "DE": 10, "GB": 10, "AU": 8, "SG": 7,
            "AE": 6, "SA": 6, "JP": 5, "MY": 5, "FR": 5, "IT": 4, "KR": 4, "TW": 4, "QA": 3, "KW": 3, "IN": 3},
    "sv": {"SE": 820, "FI": 40, "US": 30, "NO": 25, "DK": 18, "DE": 15, "GB": 12, "ES": 5,
           "FR": 5, "NL": 5, "CH": 4, "TH": 4, "PL": 4, "AX": 0, "IT": 4, "BE": 3, "AT": 3, "CA": 3},
    "de": {"DE": 710, "AT": 90, "CH": 75, "US": 30, "IT": 12, "NL": 10, "FR": 10, "GB": 10,
           "ES": 8, "PL": 7, "LU": 4, "BE": 5, "RU": 4, "CZ": 4, "DK": 3, "SE": 3, "HU": 3, "BR": 3, "TR": 3, "GR": 3},
    "fr": {"FR": 650, "BE": 60, "CA": 58, "DZ": 38, "MA": 32, "CH": 30, "US": 25, "TN": 18,
           "CI": 11, "SN": 9, "CM": 8, "DE": 8, "GB": 8, "IT": 6, "ES": 6, "NL": 4, "LU": 4,
           "MG": 3, "HT": 3, "PT": 3, "RE": 0, "PL": 3, "RO": 3, "BJ": 2, "BF": 2, "ML": 2, "NE": 2, "TG": 2},
    "nl": {"NL": 770, "BE": 130, "US": 25, "DE": 15, "GB": 10, "FR": 8, "ES": 6, "SR": 4,
           "ID": 4, "IT": 4, "CH": 3, "SE": 3, "PL": 3, "CA": 3, "AU": 3, "TR": 3, "PT": 3, "AT": 3},
    "ru": {"RU": 670, "UA": 90, "BY": 42, "KZ": 40, "US": 30, "DE": 25, "IL": 15, "UZ": 14,
           "MD": 8, "GE": 7, "AM": 7, "KG": 7, "LV": 6, "LT": 5, "EE": 5, "AZ": 5, "PL": 4, "GB": 4, "FR": 4, "TJ": 4, "CZ": 4, "FI": 4},
    "it": {"IT": 850, "US": 25, "CH": 20, "DE": 15, "GB": 12, "FR": 12, "ES": 8, "SM": 3,
           "BE": 5, "NL": 4, "RO": 4, "AT": 4, "BR": 4, "AR": 4, "CA": 4, "AU": 3, "MT": 3, "AL": 3, "GR": 3, "PL": 3, "RU": 3, "VA": 0, "SE": 3, "PT": 2},
    "es": {"MX": 245, "ES": 220, "AR": 115, "CO": 95, "PE": 70, "CL": 55, "US": 55, "VE": 40,
           "EC": 30, "BO": 15, "GT": 12, "DO": 11, "UY": 11, "CR": 9, "PA": 7, "HN": 6,
           "PR": 5, "SV": 5, "NI": 4, "PY": 10, "BR": 8, "DE": 4, "FR": 4, "GB": 4, "IT": 3, "CU": 3},
    "pl": {"PL": 870, "GB": 28, "DE": 25, "US": 22, "NL": 8, "IE": 6, "NO": 5, "FR": 5,
           "SE": 4, "IT": 4, "CZ": 3, "ES": 3, "BE": 3, "AT": 3, "UA": 3, "CA": 3, "DK": 2, "CH": 2, "RU": 2},
    "war": {"PH": 868, "US": 48, "CA": 12, "SE": 9, "DE": 8, "GB": 8, "AU": 7, "SG": 6,
            "AE": 5, "SA": 5, "JP": 4, "MY": 4, "FR": 4, "IT": 3, "KR": 3, "TW": 3, "QA": 2, "KW": 2},
    "vi": {"VN": 885, "US": 45, "JP": 12, "KR": 9, "AU": 7, "DE": 6, "CA": 6, "FR": 5,
           "TW": 5, "SG": 5, "GB": 5, "TH": 4, "KH": 3, "CZ": 3, "RU": 3, "MY": 2, "NL": 2, "LA": 2, "PL": 1},
    "ja": {"JP": 942, "US": 22, "TW": 8, "KR": 6, "CN": 5, "TH": 4, "GB": 3, "DE": 3,
           "FR": 2, "CA": 2, "AU": 2, "SG": 1},
    "zh": {"TW": 410, "HK": 190, "US": 100, "CN": 70, "MY": 60, "SG": 50, "JP": 30, "CA": 25,
           "AU": 20, "GB": 15, "KR": 10, "TH": 10, "MO": 10},
    "arz": {"EG": 340, "SA": 115, "DZ": 80, "MA": 70, "IQ": 65, "US": 50, "JO": 35, "AE": 35,
            "TN": 30, "SY": 30, "LB": 25, "PS": 25, "LY": 20, "YE": 20, "DE": 15, "KW": 15,
            "QA": 10, "OM": 10, "SD": 20, "FR": 10, "GB": 10, "BH": 5},
    "ar": {"EG": 300, "SA": 150, "DZ": 100, "MA": 80, "IQ": 80, "JO": 40, "SY": 40, "AE": 40,
           "TN": 35, "PS": 30, "LB": 25, "LY": 20, "YE": 20, "US": 20, "KW": 15, "QA": 10,
           "OM": 10, "SD": 15, "BH": 5, "DE": 5, "FR": 5, "GB": 5},
    "uk": {"UA": 760, "RU": 90, "PL": 30, "US": 25, "DE": 20, "CZ": 10, "GB": 8, "CA": 8,
           "IT": 7, "ES": 6, "FR": 6, "SK": 5, "BY": 5, "PT": 4, "NL": 4, "MD": 4, "IL": 4, "TR": 4},
    "pt": {"BR": 740, "PT": 120, "US": 30, "AO": 15, "MZ": 10, "GB": 10, "FR": 8, "DE": 8,
           "JP": 6, "ES": 6, "CH": 5, "IT": 5, "CA": 5, "IE": 4, "LU": 4, "BE": 4, "NL": 4, "CV": 3, "AR": 3, "PY": 3, "AU": 3, "TL": 2, "MO": 2},
    "ko": {"KR": 875, "US": 45, "JP": 20, "CA": 8, "AU": 6, "GB": 5, "DE": 5, "VN": 4,
           "SG": 4, "TW": 4, "CN": 4, "PH": 3, "TH": 3, "MY": 3, "FR": 3, "NZ": 3, "ID": 2, "HK": 3},
    "id": {"ID": 860, "US": 35, "MY": 25, "SG": 15, "JP": 8, "AU": 7, "DE": 6, "NL": 6,
           "GB": 5, "SA": 4, "KR": 4, "TW": 3, "HK": 3, "TH": 3, "AE": 3, "PH": 3, "BN": 2, "CA": 2, "FR": 2, "EG": 2, "TR": 2},
    "simple": {"US": 340, "GB": 110, "IN": 100, "PH": 50, "CA": 40, "AU": 30, "DE": 30,
               "ID": 30, "PK": 20, "NG": 20, "BD": 20, "MY": 20, "SG": 15, "ZA": 15, "KE": 10,
               "NL": 10, "FR": 10, "BR": 10, "MX": 10, "CN": 10, "JP": 10, "KR": 10, "EG": 10,
               "SA": 10, "VN": 10, "TH": 10, "RU": 10, "TR": 10, "ES": 10, "IT": 10},
}

EDIT_SHARES: dict[str, dict[str, int]] = {
    "en": {"US": 410, "GB": 150, "IN": 70, "CA": 60, "AU": 50, "DE": 20, "PH": 15, "IE": 12,
           "NL": 12, "NZ": 10, "SG": 8, "PK": 8, "ZA": 10, "SE": 8, "IT": 10, "FR": 15,
           "BR": 10, "ES": 8, "PL": 8, "JP": 10, "MY": 6, "NG": 6, "KE": 5, "BD": 5,
           "ID": 6, "MX": 6, "RU": 8, "CN": 5, "HK": 5, "KR": 5, "TR": 5, "IL": 6,
           "SA": 4, "AE": 4, "EG": 4, "TH": 4, "VN": 3, "AR": 4, "CO": 3, "CL": 3,
           "PT": 3, "GR": 3, "RO": 3, "CZ": 3, "FI": 3, "NO": 3, "DK": 3, "CH": 5, "AT": 4, "BE": 5},
    "ceb": {"SE": 290, "PH": 250, "US": 120, "DE": 80, "GB": 50, "FR": 40, "RU": 30, "NL": 30,
            "JP": 25, "IN": 20, "BR": 20, "IT": 15, "ES": 15, "CA": 10, "AU": 10},
    "sv": {"SE": 830, "FI": 40, "US": 25, "NO": 20, "DK": 15, "DE": 15, "GB": 10, "ES": 5,
           "FR": 5, "NL": 5, "CH": 4, "PL": 4, "IT": 4, "BE": 3, "AT": 3, "CA": 3, "TH": 3, "EE": 3},
    "de": {"DE": 740, "AT": 90, "CH": 80, "US": 20, "IT": 10, "NL": 8, "FR": 8, "GB": 8,
           "ES": 5, "PL": 5, "LU": 4, "BE": 4, "RU": 3, "CZ": 3, "DK": 2, "SE": 2, "HU": 2, "BR": 2, "TR": 2},
    "fr": {"FR": 670, "BE": 70, "CA": 60, "CH": 40, "DZ": 30, "MA": 25, "US": 20, "TN": 15,
           "CI": 8, "SN": 7, "CM": 6, "DE": 6, "GB": 6, "IT": 5, "ES": 5, "NL": 3, "LU": 3,
           "MG": 3, "HT": 2, "PT": 2, "PL": 2, "RO": 2, "BJ": 2, "BF": 2, "ML": 2, "NE": 2, "TG": 2},
    "nl": {"NL": 780, "BE": 130, "US": 20, "DE": 12, "GB": 8, "FR": 7, "ES": 5, "SR": 4,
           "ID": 3, "IT": 3, "CH": 3, "SE": 3, "PL": 3, "CA": 3, "AU": 3, "TR": 2, "PT": 2, "AT": 2, "CW": 2, "ZA": 2, "NZ": 2, "DK": 1},
    "ru": {"RU": 700, "UA": 80, "BY": 50, "KZ": 30, "US": 25, "DE": 20, "IL": 14, "UZ": 10,
           "MD": 7, "GE": 6, "AM": 6, "KG": 6, "LV": 5, "LT": 5, "EE": 5, "AZ": 5, "PL": 4, "GB": 4, "FR": 4, "TJ": 3, "CZ": 3, "FI": 3},
    "it": {"IT": 860, "US": 20, "CH": 20, "DE": 12, "GB": 10, "FR": 10, "ES": 7, "SM": 3,
           "BE": 4, "NL": 4, "RO": 4, "AT": 4, "BR": 4, "AR": 3, "CA": 3, "AU": 3, "MT": 3, "AL": 3, "GR": 3, "PL": 3, "RU": 3, "SE": 3, "PT": 2, "VE": 2, "MX": 2, "UY": 2, "IE": 1},
    "es": {"ES": 260, "MX": 220, "AR": 130, "CO": 90, "PE": 60, "CL": 60, "VE": 50, "US": 50,
           "EC": 25, "UY": 15, "BO": 12, "GT": 10, "DO": 8, "CR": 8, "PA": 6, "HN": 5,
           "PY": 10, "SV": 4, "NI": 3, "PR": 4, "BR": 6, "DE": 4, "FR": 4, "GB": 4, "IT": 3, "CU": 4},
    "pl": {"PL": 860, "GB": 30, "DE": 28, "US": 22, "NL": 8, "IE": 7, "NO": 5, "FR": 5,
           "SE": 4, "IT": 4, "CZ": 3, "ES": 3, "BE": 3, "AT": 3, "UA": 3, "CA": 3, "DK": 2, "CH": 2, "RU": 2, "FI": 2, "LT": 1},
    "war": {"PH": 300, "SE": 220, "US": 130, "DE": 70, "GB": 50, "FR": 40, "RU": 35, "NL": 30,
            "JP": 25, "IN": 20, "BR": 20, "IT": 20, "ES": 15, "CA": 15, "AU": 10},
    "vi": {"VN": 850, "US": 60, "JP": 10, "KR": 8, "AU": 7, "DE": 6, "CA": 6, "FR": 5,
           "TW": 5, "SG": 5, "GB": 5, "TH": 4, "KH": 3, "CZ": 3, "RU": 3, "MY": 3, "NL": 3, "LA": 2, "PL": 2, "FI": 2, "SE": 2, "NO": 2, "DK": 2, "CH": 2},
    "ja": {"JP": 930, "US": 30, "TW": 8, "KR": 7, "CN": 6, "TH": 4, "GB": 3, "DE": 3,
           "FR": 2, "CA": 2, "AU": 2, "SG": 2, "HK": 1},
    "zh": {"TW": 440, "HK": 210, "CN": 120, "MY": 50, "US": 50, "SG": 40, "JP": 20, "CA": 20,
           "AU": 15, "MO": 10, "GB": 10, "KR": 5, "TH": 5, "NZ": 3, "DE": 2},
    "arz": {"EG": 870, "SA": 30, "US": 20, "AE": 20, "SD": 15, "DZ": 10, "MA": 10, "JO": 10,
            "IQ": 5, "KW": 5, "LY": 5},
    "ar": {"EG": 280, "SA": 160, "DZ": 110, "MA": 90, "IQ": 70, "JO": 50, "SY": 40, "AE": 40,
           "TN": 40, "PS": 30, "LB": 30, "LY": 20, "YE": 15, "US": 20, "KW": 15, "QA": 10, "OM": 10, "SD": 10, "BH": 5, "DE": 5, "FR": 5, "GB": 5},
    "uk": {"UA": 840, "RU": 50, "PL": 20, "US": 18, "DE": 15, "CZ": 8, "GB": 6, "CA": 6,
           "IT": 5, "ES": 4, "FR": 4, "SK": 4, "BY": 4, "PT": 3, "NL": 3, "MD": 3, "IL": 3, "TR": 2, "AT": 2},
    "pt": {"BR": 760, "PT": 130, "US": 25, "AO": 10, "MZ": 8, "GB": 8, "FR": 7, "DE": 6,
           "JP": 5, "ES": 5, "CH": 4, "IT": 4, "CA": 4, "IE": 3, "LU": 3, "BE": 3, "NL": 3, "CV": 3, "AR": 3, "PY": 2, "AU": 2, "TL": 1, "MO": 1},
    "ko": {"KR": 870, "US": 50, "JP": 18, "CA": 8, "AU": 6, "GB": 5, "DE": 5, "VN": 3,
           "SG": 4, "TW": 4, "CN": 4, "PH": 3, "TH": 3, "MY": 3, "FR": 3, "NZ": 3, "ID": 2, "HK": 3, "AT": 1, "NL": 2},
    "id": {"ID": 840, "US": 40, "MY": 30, "SG": 18, "JP": 8, "AU": 8, "DE": 7, "NL": 7,
           "GB": 6, "SA": 4, "KR": 4, "TW": 3, "HK": 3, "TH": 3, "AE": 3, "PH": 3, "BN": 2, "CA": 2, "FR": 2, "EG": 2, "TR": 2, "IN": 3},
    "simple": {"US": 360, "GB": 120, "IN": 90, "PH": 45, "CA": 45, "AU": 35, "DE": 25,
               "ID": 25, "PK": 20, "NG": 20, "BD": 15, "MY": 15, "SG": 15, "ZA": 15, "KE": 10,
               "NL": 10, "FR": 10, "BR": 10, "MX": 10, "CN": 10, "JP": 10, "KR": 10, "EG": 10,
               "SA": 10, "VN": 10, "TH": 10, "RU": 10, "TR": 10, "ES": 10, "IT": 15},
}

# articles, total_pages, edits, editors, active_editors, stub_articles,
# monthly views, monthly edits
SITE: dict[str, tuple[int, int, int, int, int, int, int, int]] = {
    "en": (6_280_000, 53_000_000, 1_010_000_000, 41_500_000, 121_000, 2_100_000, 10_200_000_000, 5_500_000),
    "ceb": (5_980_000, 11_200_000, 33_000_000, 93_000, 160, 4_900_000, 6_500_000, 28_000),
    "sv": (2_970_000, 7_200_000, 49_000_000, 780_000, 2_300, 2_250_000, 58_000_000, 95_000),
    "de": (2_560_000, 7_600_000, 210_000_000, 3_900_000, 17_500, 240_000, 1_010_000_000, 1_000_000),
    "fr": (2_310_000, 11_000_000, 181_000_000, 4_400_000, 16_800, 700_000, 780_000_000, 900_000),
    "nl": (2_050_000, 4_600_000, 59_000_000, 1_200_000, 3_900, 620_000, 133_000_000, 150_000),
    "ru": (1_710_000, 6_700_000, 113_000_000, 2_900_000, 10_500, 510_000, 930_000_000, 700_000),
    "it": (1_680_000, 7_000_000, 119_000_000, 2_200_000, 8_200, 430_000, 520_000_000, 620_000),
    "es": (1_670_000, 7_700_000, 136_000_000, 6_300_000, 14_900, 520_000, 950_000_000, 720_000),
    "pl": (1_460_000, 3_400_000, 62_000_000, 1_100_000, 4_400, 440_000, 320_000_000, 230_000),
    "war": (1_260_000, 3_200_000, 6_200_000, 51_000, 80, 1_070_000, 2_100_000, 9_000),
    "vi": (1_260_000, 19_300_000, 64_000_000, 780_000, 2_100, 990_000, 85_000_000, 110_000),
    "ja": (1_260_000, 3_800_000, 81_000_000, 1_700_000, 14_300, 390_000, 1_080_000_000, 480_000),
    "zh": (1_180_000, 6_900_000, 64_000_000, 3_100_000, 8_700, 400_000, 340_000_000, 380_000),
    "arz": (1_130_000, 1_600_000, 7_100_000, 180_000, 380, 960_000, 16_000_000, 26_000),
    "ar": (1_110_000, 7_000_000, 55_000_000, 2_200_000, 4_900, 420_000, 180_000_000, 240_000),
    "uk": (1_070_000, 3_500_000, 33_000_000, 600_000, 3_000, 290_000, 85_000_000, 120_000),
    "pt": (1_060_000, 5_200_000, 62_000_000, 2_700_000, 5_600, 340_000, 330_000_000, 280_000),
    "id": (560_000, 3_400_000, 18_300_000, 1_200_000, 2_700, 230_000, 125_000_000, 130_000),
    "ko": (530_000, 2_600_000, 28_000_000, 780_000, 2_400, 190_000, 105_000_000, 120_000),
    "simple": (205_000, 640_000, 7_800_000, 1_250_000, 1_100, 84_000, 42_000_000, 38_000),
}

# sysop, bureaucrat, checkuser, oversight, rollbacker
GROUPS: dict[str, tuple[int, int, int, int, int]] = {
    "en": (1061, 18, 48, 45, 6200),
    "ceb": (5, 2, 0, 0, 6),
    "sv": (61, 6, 4, 4, 190),
    "de": (188, 9, 5, 6, 0),
    "fr": (154, 8, 5, 5, 420),
    "nl": (36, 4, 4, 4, 130),
    "ru": (72, 5, 6, 4, 970),
    "it": (118, 7, 4, 4, 260),
    "es": (59, 6, 5, 5, 310),
    "pl": (98, 4, 4, 4, 150),
    "war": (3, 1, 0, 0, 2),
    "vi": (19, 3, 2, 0, 65),
    "ja": (40, 8, 5, 4, 130),
    "zh": (75, 6, 6, 5, 410),
    "arz": (7, 2, 0, 0, 11),
    "ar": (26, 4, 3, 2, 210),
    "uk": (38, 4, 3, 2, 170),
    "pt": (61, 6, 4, 4, 340),
    "id": (28, 3, 2, 0, 90),
    "ko": (22, 3, 2, 2, 80),
    "simple": (17, 3, 2, 0, 40),
}

# abusefilter_rules, blocked_accounts, deletion_requests, steward_requests
GOVERNANCE: dict[str, tuple[int, int, int, int]] = {
    "en": (350, 1_050_000, 6400, 2),
    "ceb": (12, 1_100, 14, 18),
    "sv": (110, 9_800, 120, 4),
    "de": (310, 48_000, 1100, 3),
    "fr": (260, 52_000, 900, 3),
    "nl": (160, 11_000, 260, 3),
    "ru": (210, 61_000, 800, 4),
    "it": (190, 46_000, 620, 3),
    "es": (230, 88_000, 740, 4),
    "pl": (140, 18_000, 340, 3),
    "war": (8, 700, 6, 14),
    "vi": (60, 7_200, 150, 7),
    "ja": (150, 21_000, 260, 4),
    "zh": (120, 33_000, 420, 5),
    "arz": (20, 2_600, 40, 9),
    "ar": (90, 26_000, 380, 5),
    "uk": (85, 7_800, 210, 5),
    "pt": (150, 41_000, 520, 4),
    "id": (70, 9_400, 220, 6),
    "ko": (80, 8_600, 190, 6),
    "simple": (45, 14_000, 90, 8),
}

# quality, controversiality, reliability
PROVIDER_SCORES: dict[str, tuple[float, float, float]] = {
    "en": (0.58, 0.24, 0.72), "ceb": (0.18, 0.05, 0.35), "sv": (0.34, 0.08, 0.58),
    "de": (0.61, 0.21, 0.74), "fr": (0.57, 0.22, 0.70), "nl": (0.52, 0.14, 0.66),
    "ru": (0.54, 0.27, 0.62), "it": (0.53, 0.19, 0.67), "es": (0.51, 0.23, 0.64),
    "pl": (0.50, 0.16, 0.65), "war": (0.16, 0.04, 0.31), "vi": (0.37, 0.12, 0.52),
    "ja": (0.55, 0.22, 0.69), "zh": (0.49, 0.29, 0.60), "arz": (0.27, 0.15, 0.41),
    "ar": (0.44, 0.31, 0.55), "uk": (0.47, 0.24, 0.58), "pt": (0.48, 0.22, 0.61),
    "id": (0.41, 0.13, 0.54), "ko": (0.46, 0.18, 0.60), "simple": (0.33, 0.09, 0.50),
}

# patrolling_tools, stewards_with_language
CURATED: dict[str, tuple[int, int]] = {
    "en": (24, 36), "ceb": (2, 1), "sv": (6, 2), "de": (16, 7), "fr": (14, 8),
    "nl": (8, 3), "ru": (11, 6), "it": (10, 4), "es": (12, 9), "pl": (9, 3),
    "war": (1, 1), "vi": (4, 1), "ja": (9, 2), "zh": (7, 4), "arz": (1, 1),
    "ar": (5, 3), "uk": (5, 2), "pt": (8, 5), "id": (4, 2), "ko": (5, 1),
    "simple": (3, 12),
}

# search / social / media outlets / direct referral mix (permille)
MEDIA_MIX: dict[str, tuple[int, int, int, int]] = {
    "en": (620, 130, 90, 160), "ceb": (870, 40, 10, 80), "sv": (700, 90, 60, 150),
    "de": (680, 80, 90, 150), "fr": (690, 90, 70, 150), "nl": (710, 80, 60, 150),
    "ru": (740, 90, 50, 120), "it": (720, 80, 60, 140), "es": (730, 100, 50, 120),
    "pl": (730, 80, 50, 140), "war": (900, 30, 10, 60), "vi": (780, 110, 30, 80),
    "ja": (830, 60, 40, 70), "zh": (760, 90, 40, 110), "arz": (860, 70, 10, 60),
    "ar": (770, 120, 40, 70), "uk": (760, 80, 40, 120), "pt": (750, 110, 40, 100),
    "id": (790, 120, 30, 60), "ko": (800, 70, 50, 80), "simple": (700, 120, 60, 120),
}

DEMOCRACY_INDEX: dict[str, float] = {
    "US": 0.73, "GB": 0.80, "DE": 0.84, "FR": 0.78, "JP": 0.74, "CA": 0.85, "AU": 0.83,
    "NZ": 0.86, "SE": 0.88, "NO": 0.89, "FI": 0.87, "DK": 0.88, "NL": 0.85, "BE": 0.80,
    "CH": 0.86, "AT": 0.80, "IT": 0.76, "ES": 0.79, "PT": 0.82, "IE": 0.84, "PL": 0.60,
    "CZ": 0.76, "HU": 0.48, "SK": 0.72, "RO": 0.62, "GR": 0.72, "AL": 0.50, "MT": 0.74,
    "SM": 0.78, "LU": 0.85, "EE": 0.84, "LV": 0.78, "LT": 0.78, "RU": 0.13, "UA": 0.40,
    "BY": 0.10, "KZ": 0.14, "MD": 0.52, "GE": 0.48, "AM": 0.45, "KG": 0.30, "UZ": 0.10,
    "TJ": 0.07, "AZ": 0.10, "CN": 0.04, "TW": 0.79, "HK": 0.36, "KR": 0.77, "SG": 0.42,
    "MY": 0.45, "TH": 0.25, "VN": 0.09, "ID": 0.49, "PH": 0.38, "IN": 0.42, "PK": 0.28,
    "BD": 0.18, "KH": 0.12, "LA": 0.06, "BN": 0.20, "EG": 0.13, "SA": 0.05, "AE": 0.09,
    "QA": 0.10, "KW": 0.27, "BH": 0.08, "OM": 0.12, "JO": 0.24, "LB": 0.25, "SY": 0.03,
    "IQ": 0.22, "YE": 0.05, "LY": 0.10, "TN": 0.56, "DZ": 0.23, "MA": 0.26, "SD": 0.12,
    "PS": 0.21, "IL": 0.65, "TR": 0.30, "MX": 0.48, "BR": 0.55, "AR": 0.65, "CL": 0.75,
    "CO": 0.50, "PE": 0.55, "VE": 0.08, "EC": 0.50, "BO": 0.40, "UY": 0.82, "PY": 0.48,
    "CR": 0.80, "PA": 0.62, "GT": 0.38, "HN": 0.32, "NI": 0.14, "DO": 0.55, "SV": 0.42,
    "CU": 0.10, "NG": 0.35, "ZA": 0.62, "KE": 0.38, "SN": 0.58, "CI": 0.40, "CM": 0.22,
    "MG": 0.40, "HT": 0.28, "BJ": 0.42, "BF": 0.38, "ML": 0.30, "NE": 0.34, "TG": 0.28,
    "AO": 0.22, "MZ": 0.34, "CV": 0.72, "TL": 0.58, "SR": 0.68, "CW": 0.70,
    # "MO" and "PR" are deliberately absent: coverage < 1 must occur in real data.
}


def entropy(shares: dict[str, float]) -> float:
    total = sum(shares.values())
    return -sum((v / total) * math.log(v / total) for v in shares.values() if v > 0)


def bucketize(value: float) -> float | None:
    """Snap a small count to the geometric mean of its decade privacy bucket."""
    if value < 1:
        return None
    if value >= 100_000:
        return float(round(value))
    k = int(math.floor(math.log10(value)))
    lo, hi = 10**k, 10 ** (k + 1) - 1
    return math.sqrt(lo * hi)


def monthly_distributions(
    rng: random.Random, shares: dict[str, int], monthly_total: float, subject: str
) -> list[dict]:
    """Split a share table into three month buckets with mild jitter.

    Views and edits are flows (window total spread over months by
    MONTH_WEIGHTS); active editors are a stock repeated per month and
    snapped to privacy-bucket estimates like the live path produces.
    """
    out = []
    for month, weight in zip(MONTHS, MONTH_WEIGHTS):
        jittered = {
            country: permille * (1.0 + rng.uniform(-0.03, 0.03))
            for country, permille in shares.items()
            if permille > 0
        }
        norm = sum(jittered.values())
        entries = {}
        for country, share in sorted(jittered.items()):
            if subject == "active_editors":
                snapped = bucketize(monthly_total * share / norm)
                if snapped is None:
                    continue
                entries[country] = snapped
            else:
                value = int(round(monthly_total * 3 * weight * share / norm))
                if value > 0:
                    entries[country] = value
        year, mon = month.split("-")
        nxt = f"{int(year) + 1}-01" if mon == "12" else f"{year}-{int(mon) + 1:02d}"
        out.append(
            {"subject": subject, "window": {"start": month, "end": nxt}, "entries": entries}
        )
    return out


def summed_entropy(dists: list[dict]) -> float:
    totals: dict[str, float] = {}
    for dist in dists:
        for country, magnitude in dist["entries"].items():
            totals[country] = totals.get(country, 0.0) + magnitude
    return entropy(totals)


def build_snapshot(rng: random.Random, code: str) -> dict:
    articles, pages, edits, editors, active, stubs, views_pm, edits_pm = SITE[code]
    sysop, bureaucrat, checkuser, oversight, rollbacker = GROUPS[code]
    abusefilter, blocked, deletions, steward = GOVERNANCE[code]
    quality, controversy, reliability = PROVIDER_SCORES[code]
    tools, stewards = CURATED[code]
    search, social, outlets, direct = MEDIA_MIX[code]

    distributions = []
    distributions += monthly_distributions(rng, VIEW_SHARES[code], views_pm, "views")
    distributions += monthly_distributions(rng, EDIT_SHARES[code], edits_pm, "edits")
    distributions += monthly_distributions(rng, EDIT_SHARES[code], float(active), "active_editors")

    return {
        "schema_version": 1,
        "wiki": code,
        "family": "wikipedia",
        "window": WINDOW,
        "captured_at": CAPTURED_AT,
        "site_stats": {
            "articles": articles,
            "total_pages": pages,
            "edits": edits,
            "editors": editors,
            "active_editors": active,
            "stub_articles": stubs,
        },
        "group_counts": {
            "bureaucrat": bureaucrat,
            "checkuser": checkuser,
            "oversight": oversight,
            "rollbacker": rollbacker,
            "sysop": sysop,
        },
        "governance_stats": {
            "abusefilter_rules": abusefilter,
            "blocked_accounts": blocked,
            "total_accounts": editors,
            "deletion_requests": deletions,
            "steward_requests": steward,
        },
        "distributions": distributions,
        "external_scores": {
            "controversiality": {"mean_controversiality": controversy},
            "curated": {"patrolling_tools": tools, "stewards_with_language": stewards},
            "media_referrals": {
                "direct": round(views_pm * 3 * direct / 1000),
                "media_outlets": round(views_pm * 3 * outlets / 1000),
                "search_engines": round(views_pm * 3 * search / 1000),
                "social_media": round(views_pm * 3 * social / 1000),
            },
            "quality_model": {"mean_quality": quality},
            "source_reliability": {"mean_reliability": reliability},
        },
        "warnings": [],
    }


def verify_orderings(snapshots: dict[str, dict]) -> None:
    """The entropy orderings the corpus must exhibit; see tests for the same checks."""
    view_s: dict[str, float] = {}
    edit_s: dict[str, float] = {}
    for code, snapshot in snapshots.items():
        if SITE[code][0] <= 500_000:
            continue
        dists = snapshot["distributions"]
        view_s[code] = summed_entropy([d for d in dists if d["subject"] == "views"])
        edit_s[code] = summed_entropy([d for d in dists if d["subject"] == "edits"])

    def median(values: list[float]) -> float:
        ordered = sorted(values)
        n = len(ordered)
        mid = n // 2
        return ordered[mid] if n % 2 else (ordered[mid - 1] + ordered[mid]) / 2

    view_median = median(list(view_s.values()))
    edit_median = median(list(edit_s.values()))

    assert min(view_s, key=view_s.get) == "ja", "ja must have the minimum view entropy"
    assert all(view_s["ja"] < v for c, v in view_s.items() if c != "ja")
    for code in ("en", "es", "ar"):
        assert edit_s[code] > edit_median and view_s[code] > view_median, code
    for code in ("ceb", "war"):
        assert edit_s[code] > edit_median and view_s[code] < view_median, code
    assert view_s["arz"] > edit_s["arz"], "arz views must be more diverse than edits"

    points = sorted((edit_s[c], view_s[c]) for c in view_s)
    mean_x = sum(x for x, _ in points) / len(points)
    mean_y = sum(y for _, y in points) / len(points)
    slope = sum((x - mean_x) * (y - mean_y) for x, y in points) / sum(
        (x - mean_x) ** 2 for x, _ in points
    )
    assert slope > 0, f"fitted slope must be positive, got {slope}"


def main() -> None:
    rng = random.Random(SEED)
    snapshots = {code: build_snapshot(rng, code) for code in sorted(SITE)}
    verify_orderings(snapshots)

    snapshot_dir = OUT_DIR / "fixtures" / "snapshots"
    snapshot_dir.mkdir(parents=True, exist_ok=True)
    for code, snapshot in snapshots.items():
        name = f"{code}.wikipedia.{WINDOW['start']}..{WINDOW['end']}.snapshot.json"
        (snapshot_dir / name).write_text(json.dumps(snapshot, indent=1, sort_keys=True) + "\n")

    curated_file = {
        code: {
            "patrolling_tools": CURATED[code][0],
            "stewards_with_language": CURATED[code][1],
            "note": "operator-curated demo value",
        }
        for code in sorted(CURATED)
    }
    (OUT_DIR / "curated_data.json").write_text(json.dumps(curated_file, indent=1, sort_keys=True) + "\n")

    index_file = {
        "schema_version": 1,
        "name": "composite democratic-quality index (demo values)",
        "scores": dict(sorted(DEMOCRACY_INDEX.items())),
    }
    (OUT_DIR / "democracy_index.json").write_text(json.dumps(index_file, indent=1, sort_keys=True) + "\n")

    print(f"wrote {len(snapshots)} snapshots to {snapshot_dir}")


if __name__ == "__main__":
    main()
