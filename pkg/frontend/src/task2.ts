/** Task 2 view: rate two headlines for seriousness on 0-100 sliders. */

import { Api, ApiError, RateTask } from "./api.js";
import { clear, el } from "./dom.js";

export function renderTask2(
  root: HTMLElement,
  api: Api,
  task: RateTask,
  onDone: (reward: number) => void,
): void {
  clear(root);
  const touched = task.items.map(() => false);
  const sliders: HTMLInputElement[] = [];
  const error = el("p", { id: "task2-error", class: "error", hidden: "" });
  const submit = el("button", { id: "submit-ratings", disabled: "" }, "Submit ratings");

  const maybeEnable = () => {
    if (touched.every(Boolean)) {
      submit.removeAttribute("disabled");
    }
  };

  // Items render in the order the server sent them, with identical markup:
  // nothing here may hint at which one is the ground-truth headline.
  const list = el("ol", { id: "rate-items" });
  task.items.forEach((item, index) => {
    const slider = el("input", {
      type: "range", min: "0", max: "100", value: "50",
      id: `slider-${index}`, "data-item-id": item.id,
    }) as HTMLInputElement;
    const valueLabel = el("span", { class: "slider-value" }, "50%");
    slider.addEventListener("input", () => {
      touched[index] = true;
      valueLabel.textContent = `${slider.value}%`;
      maybeEnable();
    });
    sliders.push(slider);
    list.append(
      el("li", { class: "rate-item" },
         el("p", { class: "headline" }, item.text),
         el("label", {}, "Looks like serious news: ", slider, valueLabel)),
    );
  });

  submit.addEventListener("click", async () => {
    error.setAttribute("hidden", "");
    const payload = sliders.map((slider) => ({
      id: slider.dataset.itemId as string,
      value: Number(slider.value) / 100,
    }));
    try {
      const reply = await api.submitRatings(payload);
      onDone(reply.reward);
    } catch (err) {
      if (err instanceof ApiError) {
        error.textContent = err.status === 409
          ? "Already rated - fetching a fresh task."
          : `Rating failed (${err.status}): ${err.detail}`;
        error.removeAttribute("hidden");
        return;
      }
      throw err;
    }
  });

  root.append(
    el("h2", {}, "Real or not?"),
    el("p", { class: "hint" },
       "For each headline, say how likely it is to come from a serious news outlet."),
    list,
    error,
    submit,
  );
}
