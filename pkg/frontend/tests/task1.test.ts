// Task 1 view: live diff preview, submit gating, inline errors.

import { beforeEach, describe, expect, it, vi } from "vitest";

import { Api, ApiError } from "../src/api.js";
import { renderTask1 } from "../src/task1.js";

const TASK = {
  task: "unfun" as const,
  headline: "God diagnosed with bipolar disorder",
  headline_id: "h1",
};

function setup(apiStub: Partial<Api> = {}, onDone = vi.fn()) {
  document.body.innerHTML = "<div id='root'></div>";
  const root = document.getElementById("root") as HTMLElement;
  renderTask1(root, apiStub as Api, TASK, onDone);
  const input = document.getElementById("edit-box") as HTMLTextAreaElement;
  const submit = document.getElementById("submit-unfun") as HTMLButtonElement;
  const type = (text: string) => {
    input.value = text;
    input.dispatchEvent(new Event("input"));
  };
  return { root, input, submit, type, onDone };
}

const settle = () => new Promise((resolve) => setTimeout(resolve, 0));

describe("task 1 view", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("shows the original headline and starts disabled", () => {
    const { submit } = setup();
    expect(document.getElementById("original")?.textContent).toBe(TASK.headline);
    expect(submit.hasAttribute("disabled")).toBe(true);
  });

  it("stays disabled for unchanged text, even with case changes", () => {
    const { submit, type } = setup();
    type("god diagnosed with bipolar disorder");
    expect(submit.hasAttribute("disabled")).toBe(true);
  });

  it("stays disabled for emptied text", () => {
    const { submit, type } = setup();
    type("   ");
    expect(submit.hasAttribute("disabled")).toBe(true);
  });

  it("highlights the running-example edit as one substitution plus one insertion", () => {
    const { type } = setup();
    type("Bob Dylan diagnosed with bipolar disorder");
    const preview = document.getElementById("diff-preview") as HTMLElement;
    expect(preview.querySelectorAll(".sub").length).toBe(1);
    expect(preview.querySelectorAll(".ins").length).toBe(1);
    expect(preview.querySelectorAll(".del").length).toBe(0);
  });

  it("submits the edited text and signals completion", async () => {
    const submitUnfun = vi.fn().mockResolvedValue({
      submission_id: "s1", modified_id: "m1", pending_reward: true,
    });
    const { submit, type, onDone } = setup({ submitUnfun } as Partial<Api>);
    type("Bob Dylan diagnosed with bipolar disorder");
    expect(submit.hasAttribute("disabled")).toBe(false);
    submit.click();
    await settle();
    expect(submitUnfun).toHaveBeenCalledWith("h1", "Bob Dylan diagnosed with bipolar disorder");
    expect(onDone).toHaveBeenCalledTimes(1);
  });

  it("surfaces server errors inline and preserves the edit", async () => {
    const submitUnfun = vi.fn().mockRejectedValue(new ApiError(404, "unknown headline"));
    const { submit, input, type, onDone } = setup({ submitUnfun } as Partial<Api>);
    type("Bob Dylan diagnosed with bipolar disorder");
    submit.click();
    await settle();
    const error = document.getElementById("task1-error") as HTMLElement;
    expect(error.hasAttribute("hidden")).toBe(false);
    expect(error.textContent).toContain("404");
    expect(input.value).toBe("Bob Dylan diagnosed with bipolar disorder");
    expect(onDone).not.toHaveBeenCalled();
  });
});
