"""A live elicitation session, driven end to end over the HTTP API.

Creates an interactive session (one answer finalizes each question), plays
a scripted respondent who answers from the movie ground truth, and prints
the final Pareto set with the dominance graph, the same flow the browser
UI runs against a deployed server.
"""

from fastapi.testclient import TestClient

from paretoelicit import SessionStore, create_app, movie_truth

truth = movie_truth()
problem = truth.problem
client = TestClient(create_app(SessionStore()))

state = client.post(
    "/sessions",
    json={
        "objects": list(problem.objects),
        "criteria": list(problem.criteria),
        "strategy": "frq",
        "k_min": 1,
        "theta": 0.51,
        "response_cap": 1,
    },
).json()
sid = state["id"]
print(f"session {sid}: {len(problem.objects)} objects x {len(problem.criteria)} criteria")

answered = 0
while True:
    resp = client.get(f"/sessions/{sid}/question")
    if resp.status_code == 409:  # terminal
        break
    q = resp.json()
    x, y = problem.object_index[q["x"]], problem.object_index[q["y"]]
    c = problem.criterion_index[q["criterion"]]
    if truth.rel[c, x, y]:
        vote = "prefer_x"
    elif truth.rel[c, y, x]:
        vote = "prefer_y"
    else:
        vote = "indifferent"
    client.post(
        f"/sessions/{sid}/votes",
        json={"question_id": q["question_id"], "vote": vote, "respondent": "demo"},
    )
    answered += 1
    print(f"  q{answered:>2}: {q['x']} vs {q['y']} on {q['criterion']:<7} -> {vote}")

result = client.get(f"/sessions/{sid}/result").json()
print(f"\nterminal after {answered} answers; Pareto-optimal: {result['pareto']}")
print("\nDominance graph:")
print(client.get(f"/sessions/{sid}/dominance.dot").text)
