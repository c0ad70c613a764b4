import pytest

from watchscreen.ingest import (
    MtParseError,
    parse_mt,
    screenable_fields,
    screenable_text,
)


def test_mt103_fields(mt103_message):
    msg = parse_mt(mt103_message)
    assert set(msg.blocks) == {"1", "2", "3", "4"}
    assert msg.get("50K") == "MIYESE INTERNATIONAL LIMITED"
    assert "TAMERLAAN TZARNAEV" in msg.get("70")
    assert msg.get("71A") == "SHA"
    assert [f.tag for f in msg.fields][:3] == ["20", "23B", "32A"]


def test_mt103_screenable(mt103_message):
    fields = dict(screenable_fields(parse_mt(mt103_message)))
    assert fields["59"] == "AHMET EMRE"
    assert "TAMERLAAN TZARNAEV" in fields["70"]
    assert "/RFB/" not in fields["70"]
    assert fields["70"].startswith("OYA/INVOICE SENT")
    assert set(fields) == {"50K", "59", "70"}


def test_block4_values_preserve_content(mt103_message):
    msg = parse_mt(mt103_message)
    body = "".join(msg.blocks["4"].split())
    rebuilt = "".join(f":{f.tag}:{f.value}" for f in msg.fields)
    assert "".join(rebuilt.split()) == body


def test_no_configured_tags():
    msg = parse_mt("{1:F01X}{4:\n:20:REF\n:71A:SHA\n-}")
    assert screenable_fields(msg) == []
    assert screenable_fields(msg, tags=["20"]) == [("20", "REF")]


def test_missing_block4():
    with pytest.raises(MtParseError, match="no block 4"):
        parse_mt("{1:F01X}{2:I103Y}")


def test_malformed_tag_reports_offset():
    raw = "{4:\n:20:REF\n:7X:BAD\n-}"
    with pytest.raises(MtParseError) as info:
        parse_mt(raw)
    assert info.value.offset == raw.index(":7X:")
    assert "offset" in str(info.value)


def test_unterminated_block4():
    with pytest.raises(MtParseError, match="not terminated"):
        parse_mt("{4:\n:20:REF\n")


def test_text_mode_passes_through():
    assert screenable_text("ANY TEXT", "text") == "ANY TEXT"
    with pytest.raises(ValueError):
        screenable_text("x", "xml")
