/** Task 1 view: edit the headline until it could pass as serious news. */

import { Api, ApiError, UnfunTask } from "./api.js";
import { diffHeadlines, editDistance, EditOp } from "./diff.js";
import { clear, el } from "./dom.js";

export function renderDiff(target: HTMLElement, ops: EditOp[]): void {
  clear(target);
  for (const op of ops) {
    if (op.kind === "MATCH") {
      target.append(el("span", { class: "tok" }, op.token_b ?? ""));
    } else if (op.kind === "SUBSTITUTE") {
      target.append(el("span", { class: "tok sub", title: `was: ${op.token_a}` }, op.token_b ?? ""));
    } else if (op.kind === "INSERT") {
      target.append(el("span", { class: "tok ins" }, op.token_b ?? ""));
    } else {
      target.append(el("del", { class: "tok del" }, op.token_a ?? ""));
    }
    target.append(" ");
  }
}

export function renderTask1(
  root: HTMLElement,
  api: Api,
  task: UnfunTask,
  onDone: () => void,
): void {
  clear(root);
  const input = el("textarea", { id: "edit-box", rows: "3" }) as HTMLTextAreaElement;
  input.value = task.headline;
  const preview = el("div", { id: "diff-preview", class: "preview" });
  const error = el("p", { id: "task1-error", class: "error", hidden: "" });
  const submit = el("button", { id: "submit-unfun", disabled: "" }, "Submit rewrite");

  const refresh = () => {
    renderDiff(preview, diffHeadlines(task.headline, input.value));
    const untouched = editDistance(task.headline, input.value) === 0;
    const empty = input.value.trim() === "";
    if (untouched || empty) {
      submit.setAttribute("disabled", "");
    } else {
      submit.removeAttribute("disabled");
    }
  };
  input.addEventListener("input", refresh);

  submit.addEventListener("click", async () => {
    error.setAttribute("hidden", "");
    try {
      await api.submitUnfun(task.headline_id, input.value);
    } catch (err) {
      if (err instanceof ApiError) {
        error.textContent = `Submission failed (${err.status}): ${err.detail}`;
        error.removeAttribute("hidden");
        return; // keep the edit state for another try
      }
      throw err;
    }
    onDone();
  });

  root.append(
    el("h2", {}, "Unfun the headline!"),
    el("p", { class: "hint" },
       "Change as few words as possible so it could come from a serious news outlet."),
    el("p", { id: "original", class: "original" }, task.headline),
    input,
    el("h3", {}, "Your edit"),
    preview,
    error,
    submit,
  );
  refresh();
}
