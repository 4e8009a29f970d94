"""One-shot prompt assembly for the LLM recognizer backend."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..errors import EmptyInputError


@dataclass(frozen=True)
class PromptPayload:
    """The fixed-order prompt: guidance, example input, example output, task text."""

    guidance: str
    shot_input: str
    shot_output: str
    user_text: str

    def as_messages(self) -> list[dict[str, str]]:
        """Chat-completion message list; the one-shot pair plays a user/assistant turn."""
        return [
            {"role": "system", "content": self.guidance},
            {"role": "user", "content": self.shot_input},
            {"role": "assistant", "content": self.shot_output},
            {"role": "user", "content": self.user_text},
        ]


def _read_builtin(name: str) -> str:
    return resources.files("adanon").joinpath(f"data/{name}").read_text(encoding="utf-8")


def build_prompt(user_text: str, template_dir: str | Path | None = None) -> PromptPayload:
    """Assemble the recognition prompt for ``user_text``.

    ``template_dir`` may point at a directory containing ``guidance.txt``,
    ``shot_input.txt`` and ``shot_output.txt`` to override the built-ins.
    """
    if not user_text:
        raise EmptyInputError("cannot build a prompt for empty text")
    if template_dir is not None:
        base = Path(template_dir)
        guidance = (base / "guidance.txt").read_text(encoding="utf-8")
        shot_input = (base / "shot_input.txt").read_text(encoding="utf-8")
        shot_output = (base / "shot_output.txt").read_text(encoding="utf-8")
    else:
        guidance = _read_builtin("guidance.txt")
        shot_input = _read_builtin("shot_input.txt")
        shot_output = _read_builtin("shot_output.txt")
    return PromptPayload(
        guidance=guidance,
        shot_input=shot_input,
        shot_output=shot_output,
        user_text=user_text,
    )
