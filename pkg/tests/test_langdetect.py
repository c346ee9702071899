"""Trigram language identification over the ten supported languages."""

import pytest

from mediawatch.ingest.langdetect import LanguageDetector, detect_language, trigram_counts

# Held-out snippets: none of these sentences appear in the profile seed texts.
SNIPPETS = {
    "en": (
        "Health officials confirmed that the outbreak has spread to several new "
        "districts, and hospitals are preparing additional beds for patients."
    ),
    "fr": (
        "Les autorités sanitaires ont confirmé que l'épidémie s'était propagée dans "
        "plusieurs nouveaux quartiers et que les hôpitaux préparaient des lits "
        "supplémentaires pour les malades."
    ),
    "es": (
        "Las autoridades sanitarias confirmaron que el brote de la enfermedad se ha "
        "extendido a varios distritos nuevos y los hospitales preparan camas "
        "adicionales para los enfermos."
    ),
    "pt": (
        "As autoridades de saúde confirmaram que o surto da doença se espalhou para "
        "vários novos distritos e os hospitais estão preparando leitos adicionais "
        "para os doentes."
    ),
    "ru": (
        "Органы здравоохранения подтвердили, что вспышка болезни распространилась на "
        "несколько новых районов, и больницы готовят дополнительные койки для "
        "пациентов."
    ),
    "ar": (
        "أكدت السلطات الصحية أن تفشي المرض قد انتشر إلى عدة مناطق جديدة وتستعد "
        "المستشفيات لتوفير أسرة إضافية للمرضى في الأيام المقبلة."
    ),
    "fa": (
        "مقامات بهداشتی تأیید کردند که شیوع بیماری به چند منطقه جدید گسترش یافته است "
        "و بیمارستان‌ها در حال آماده کردن تخت‌های بیشتری برای بیماران هستند."
    ),
    "zh-Hans": "卫生官员说，疫情已经蔓延到几个新的地区，当地医院正在为病人准备更多的床位。",
    "zh-Hant": "衛生官員說，疫情已經蔓延到幾個新的地區，當地醫院正在為病人準備更多的床位。",
    "id": (
        "Pejabat kesehatan mengkonfirmasi bahwa wabah penyakit telah menyebar ke "
        "beberapa distrik baru dan rumah sakit menyiapkan tempat tidur tambahan "
        "untuk para pasien."
    ),
}


@pytest.fixture(scope="module")
def detector():
    return LanguageDetector()


@pytest.mark.parametrize("lang", sorted(SNIPPETS))
def test_held_out_snippet_detected(detector, lang):
    assert detector.detect(SNIPPETS[lang]) == lang


def test_digits_and_punctuation_are_unknown(detector):
    assert detector.detect("12345 67890 ... !!! 42") == "und"


def test_empty_text_raises(detector):
    with pytest.raises(ValueError):
        detector.detect("   ")


def test_high_threshold_returns_unknown():
    strict = LanguageDetector(threshold=0.999)
    assert strict.detect(SNIPPETS["en"]) == "und"


def test_restricted_language_set():
    only_fr = LanguageDetector(languages=("fr",))
    assert only_fr.detect(SNIPPETS["fr"]) == "fr"
    assert set(only_fr.profiles) == {"fr"}


def test_module_level_convenience():
    assert detect_language(SNIPPETS["en"]) == "en"


def test_trigram_counts_ignore_case_and_digits():
    assert trigram_counts("ABC abc") == trigram_counts("abc 123 abc")
    assert not trigram_counts("123 456")
